"""
Аудит распределения по набору понятий справедливости
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from FairSmith.config import Budget, DEFAULT_BUDGET
from FairSmith.core.bundle import Allocation
from FairSmith.core.instance import Instance
from FairSmith.core.signals import SignalProfile
from FairSmith.data_types import FairnessNotion
from FairSmith.errors import InputError
from FairSmith.fairness.envy import envy_check_values
from FairSmith.fairness.shares import compute_aps, mms_partition, prop_share_value
from FairSmith.rational import format_rational

logger = logging.getLogger(__name__)

NotionRequest = Union[Iterable[FairnessNotion], Mapping[int, Iterable[FairnessNotion]]]


@dataclass(frozen=True)
class Verdict:
    """Вердикт одного понятия для одного агента"""
    agent: int
    notion: FairnessNotion
    holds: bool
    value: Fraction
    share: Optional[Fraction] = None
    witness: Optional[Tuple[int, int, Optional[int]]] = None

    def to_jsonable(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"agent": self.agent, "notion": self.notion.value,
                                "holds": self.holds, "value": format_rational(self.value)}
        if self.share is not None:
            data["share"] = format_rational(self.share)
        if self.witness is not None:
            agent, rival, good = self.witness
            data["witness"] = {"agent": agent, "rival": rival, "good": good}
        return data


@dataclass(frozen=True)
class FairnessReport:
    """
    Вердикты по агентам и понятиям, использованные доли и свидетели
    """
    allocation: Allocation
    verdicts: Tuple[Verdict, ...]
    profiles: Tuple[SignalProfile, ...] = field(default=(), compare=False)

    def verdict(self, agent: int, notion: FairnessNotion) -> Optional[Verdict]:
        for verdict in self.verdicts:
            if verdict.agent == agent and verdict.notion is notion:
                return verdict
        return None

    def holds(self, notion: Optional[FairnessNotion] = None, agent: Optional[int] = None) -> bool:
        """Выполнены ли все запрошенные вердикты (с фильтром по понятию и агенту)"""
        return all(verdict.holds for verdict in self.verdicts
                   if (notion is None or verdict.notion is notion)
                   and (agent is None or verdict.agent == agent))

    @property
    def all_fair(self) -> bool:
        return self.holds()

    def failures(self) -> List[Verdict]:
        return [verdict for verdict in self.verdicts if not verdict.holds]

    def shares(self, agent: int) -> Dict[FairnessNotion, Fraction]:
        return {verdict.notion: verdict.share for verdict in self.verdicts
                if verdict.agent == agent and verdict.share is not None}

    def lattice_violations(self) -> List[Tuple[int, str]]:
        """Нарушения EF => EFX => EF1 среди посчитанных вердиктов"""
        violations = []
        chain = [(FairnessNotion.EF, FairnessNotion.EFX), (FairnessNotion.EFX, FairnessNotion.EF1),
                 (FairnessNotion.EF, FairnessNotion.EF1)]
        for agent in range(self.allocation.n):
            for stronger, weaker in chain:
                first, second = self.verdict(agent, stronger), self.verdict(agent, weaker)
                if first is not None and second is not None and first.holds and not second.holds:
                    violations.append((agent, f"{stronger.value} holds but {weaker.value} fails"))
        return violations

    def lattice_failures(self, label: str) -> List[str]:
        """Нарушения решётки в виде строк '<label>, agent i: ...'"""
        return [f"{label}, agent {agent}: {message}" for agent, message in self.lattice_violations()]

    def prop_violations_for_ef(self) -> List[int]:
        """Агенты с EF, но без PROP (для субаддитивных оценок таких быть не должно)"""
        result = []
        for agent in range(self.allocation.n):
            ef, prop = self.verdict(agent, FairnessNotion.EF), self.verdict(agent, FairnessNotion.PROP)
            if ef is not None and prop is not None and ef.holds and not prop.holds:
                result.append(agent)
        return result

    def to_jsonable(self) -> Dict[str, Any]:
        return {"allocation": self.allocation.to_lists(),
                "all_fair": self.all_fair,
                "verdicts": [verdict.to_jsonable() for verdict in self.verdicts]}


def requested_notions(notions: NotionRequest, n: int) -> Dict[int, List[FairnessNotion]]:
    """Приводит запрос понятий к виду {агент: [понятия в порядке объявления]}"""
    if isinstance(notions, Mapping):
        per_agent: Dict[int, Set[FairnessNotion]] = {agent: set() for agent in range(n)}
        for agent, chosen in notions.items():
            if not 0 <= agent < n:
                raise InputError(f"notions requested for unknown agent {agent}")
            per_agent[agent] = set(chosen)
    else:
        chosen = set(notions)
        per_agent = {agent: chosen for agent in range(n)}
    return {agent: FairnessNotion.ordered(chosen) for agent, chosen in per_agent.items()}


def audit(allocation: Allocation, per_agent_profiles: Sequence[SignalProfile], notions: NotionRequest,
          instance: Instance, budget: Budget = DEFAULT_BUDGET) -> FairnessReport:
    """
    Проверяет понятия для каждого агента при его собственном профиле

    :param allocation: Полное распределение
    :param per_agent_profiles: Профиль вычисления s^(i) для каждого агента
    :param notions: Множество понятий или словарь {агент: понятия}
    :param instance: Экземпляр
    :param budget: Бюджет оракулов долей
    :return: FairnessReport
    """
    if len(per_agent_profiles) != instance.n:
        raise InputError(f"expected {instance.n} evaluation profiles, got {len(per_agent_profiles)}")
    if allocation.n != instance.n or allocation.m != instance.m:
        raise InputError("allocation does not match the instance")
    per_agent = requested_notions(notions, instance.n)
    for notion in set().union(*per_agent.values()):
        instance.check_notion(notion)

    verdicts = []
    for agent in instance.agents:
        bv = instance.valuation_at(agent, instance.check_profile(per_agent_profiles[agent]))
        value = bv(allocation.bundle(agent))
        alpha = instance.entitlements[agent]
        for notion in per_agent[agent]:
            if notion.is_envy_based:
                check = envy_check_values(bv, allocation, agent, notion)
                verdicts.append(Verdict(agent, notion, check.holds, value, witness=check.witness))
                continue
            if notion is FairnessNotion.PROP:
                share = prop_share_value(bv, alpha)
            elif notion is FairnessNotion.MMS:
                share = mms_partition(bv, instance.n, budget)[0]
            else:
                share = compute_aps(bv, alpha, budget).value
            verdicts.append(Verdict(agent, notion, value >= share, value, share))
    report = FairnessReport(allocation, tuple(verdicts), tuple(per_agent_profiles))
    logger.debug("audit of %s: %d verdicts, all fair: %s", allocation.to_lists(), len(verdicts), report.all_fair)
    return report


def audit_at(allocation: Allocation, profile: SignalProfile, notions: NotionRequest,
             instance: Instance, budget: Budget = DEFAULT_BUDGET) -> FairnessReport:
    """Аудит, где все агенты оцениваются при одном профиле (истинных сигналах)"""
    return audit(allocation, [profile] * instance.n, notions, instance, budget)
