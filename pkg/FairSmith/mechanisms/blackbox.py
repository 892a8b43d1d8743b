"""
Чёрный ящик: алгоритм для независимых оценок -> механизм для n >= 3

Каждый агент ставит догадку о всём профиле сигналов. Если не менее n-1
агентов согласны в ставке и сообщили сигнал, совпадающий со своей
координатой в ней, запускается алгоритм на оценках при этом профиле.
"""

import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import List, Optional, Sequence

from FairSmith.config import Budget, DEFAULT_BUDGET
from FairSmith.core.bundle import Allocation, Bundle, full_bundle, iter_submasks
from FairSmith.core.instance import Instance
from FairSmith.core.signals import Report, ReportProfile, SignalProfile
from FairSmith.core.valuation import BundleValuation
from FairSmith.data_types import FairnessNotion, MechanismKind
from FairSmith.errors import InputError
from FairSmith.fairness.envy import envy_check_values
from FairSmith.fairness.shares import compute_aps, mms_partition, prop_share_value
from FairSmith.mechanisms.base_mechanism import BaseMechanism, Outcome
from FairSmith.outcome_cache import cache_outcome

logger = logging.getLogger(__name__)


class IndependentAlgorithm(ABC):
    """Алгоритм F: (v_1, ..., v_n) -> распределение для независимых оценок"""
    name: str = "algorithm"

    @abstractmethod
    def __call__(self, valuations: Sequence[BundleValuation], instance: Instance) -> Allocation:
        pass


class RoundRobin(IndependentAlgorithm):
    """
    Агенты по очереди берут предмет с наибольшим приростом ценности;
    при равенстве — предмет с меньшим индексом
    """
    name = "round-robin"

    def __call__(self, valuations, instance):
        remaining = list(range(instance.m))
        bundles = [0] * instance.n
        agent = 0
        while remaining:
            bv = valuations[agent]
            base = bv(bundles[agent])
            pick = max(remaining, key=lambda item: (bv(bundles[agent] | 1 << item) - base, -item))
            bundles[agent] |= 1 << pick
            remaining.remove(pick)
            agent = (agent + 1) % instance.n
        return Allocation(tuple(bundles), instance.m)


class BruteForceFair(IndependentAlgorithm):
    """
    Лексикографически первое распределение, справедливое по notion для всех агентов

    Распределения перебираются по возрастанию маски набора агента 0, затем
    агента 1 и т. д. Для долевых понятий ветви с недостаточным набором
    отсекаются сразу. Если справедливого распределения нет, используется
    round-robin.
    """

    def __init__(self, notion: FairnessNotion, budget: Budget = DEFAULT_BUDGET):
        self.notion = notion
        self.budget = budget
        self.name = f"brute-force-{notion.value.lower()}"

    def shares(self, valuations: Sequence[BundleValuation], instance: Instance) -> List[Fraction]:
        instance.check_notion(self.notion)
        if self.notion is FairnessNotion.PROP:
            return [prop_share_value(bv, alpha) for bv, alpha in zip(valuations, instance.entitlements)]
        if self.notion is FairnessNotion.MMS:
            return [mms_partition(bv, instance.n, self.budget)[0] for bv in valuations]
        return [compute_aps(bv, alpha, self.budget).value for bv, alpha in zip(valuations, instance.entitlements)]

    def __call__(self, valuations, instance):
        n, m = instance.n, instance.m
        self.budget.check("allocations for brute-force search", n ** m, self.budget.max_partitions)
        shares = self.shares(valuations, instance) if self.notion.is_share_based else None
        bundles: List[Bundle] = [0] * n

        def search(agent: int, remaining: Bundle) -> Optional[Allocation]:
            last = agent == n - 1
            for bundle in ([remaining] if last else iter_submasks(remaining)):
                if shares is not None and valuations[agent](bundle) < shares[agent]:
                    continue
                bundles[agent] = bundle
                if last:
                    allocation = Allocation(tuple(bundles), m)
                    if shares is not None or all(
                            envy_check_values(valuations[i], allocation, i, self.notion).holds for i in range(n)):
                        return allocation
                else:
                    found = search(agent + 1, remaining & ~bundle)
                    if found is not None:
                        return found
            return None

        allocation = search(0, full_bundle(m))
        if allocation is None:
            logger.warning("no %s allocation exists for these valuations; using round-robin", self.notion.value)
            return RoundRobin()(valuations, instance)
        return allocation


class BlackBoxMechanism(BaseMechanism):
    """
    Механизм чёрного ящика: ставка b_i — полный профиль сигналов (B_i = S)

    :param instance: Экземпляр с n >= 3
    :param algorithm: Алгоритм для независимых оценок
    :param default: Заранее заданное распределение (по умолчанию всё агенту 0)
    """
    kind = MechanismKind.BLACKBOX

    def __init__(self, instance: Instance, algorithm: IndependentAlgorithm,
                 default: Optional[Allocation] = None, budget: Budget = DEFAULT_BUDGET):
        super().__init__(instance, budget)
        self.algorithm = algorithm
        self.default = default or Allocation.everything_to(0, instance.n, instance.m)
        if self.default.n != instance.n or self.default.m != instance.m:
            raise InputError("default allocation does not match the instance")
        self.name = f"blackbox-{algorithm.name}"
        self._bids: Optional[Sequence[SignalProfile]] = None

    def bid_space(self, agent: int) -> Sequence[SignalProfile]:
        if self._bids is None:
            self.budget.check("signal profiles in the bid space", self.instance.profile_count,
                              self.budget.max_report_space)
            self._bids = tuple(self.instance.profiles())
        return self._bids

    def report_space_size(self, agent: int) -> int:
        return len(self.instance.spaces[agent]) * self.instance.profile_count

    def _check_bid(self, agent: int, bid) -> None:
        if not isinstance(bid, tuple):
            raise InputError("a bid must be a full signal profile", f"reports[{agent}].bid")
        try:
            self.instance.check_profile(bid)
        except InputError as error:
            raise InputError(str(error), f"reports[{agent}].bid") from None

    def truthful_guess(self, true_signals: SignalProfile) -> ReportProfile:
        profile = tuple(true_signals)
        return tuple(Report(signal, profile) for signal in profile)

    def consensus(self, reports: ReportProfile) -> Optional[List[int]]:
        """
        Агенты N' с общей ставкой и сигналом, совпадающим с их координатой

        При n >= 3 две разные ставки не могут обе собрать n-1 агентов.
        """
        n = self.instance.n
        for candidate in dict.fromkeys(report.bid for report in reports):
            agreeing = [agent for agent, report in enumerate(reports)
                        if report.bid == candidate and report.signal == candidate[agent]]
            if len(agreeing) >= n - 1:
                return agreeing
        return None

    @cache_outcome()
    def run_algorithm(self, bid: SignalProfile) -> Allocation:
        """F(v_1(b, .), ..., v_n(b, .)), запоминается по ставке"""
        valuations = [self.instance.valuation_at(agent, bid) for agent in self.instance.agents]
        return self.algorithm(valuations, self.instance)

    def _allocate(self, reports: ReportProfile) -> Outcome:
        agreeing = self.consensus(reports)
        if agreeing is None:
            return Outcome(self.default, {"consensus": False, "default": True})
        anchor = agreeing[0]
        allocation = self.run_algorithm(reports[anchor].bid)
        return Outcome(allocation, {"consensus": True, "default": False,
                                    "agreeing_agents": agreeing, "anchor": anchor})


def blackbox_mechanism(instance: Instance, algorithm: IndependentAlgorithm, default: Optional[Allocation],
                       reports: ReportProfile) -> Allocation:
    return BlackBoxMechanism(instance, algorithm, default).allocate(reports).allocation
