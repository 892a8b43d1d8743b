"""
Price-&-Choose для двух агентов с произвольными долями

Агент 0 назначает цены, агент 1 покупает лучший доступный набор на
бюджет alpha_2. Строгие неравенства решаются через запас LP.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from FairSmith.config import Budget, DEFAULT_BUDGET
from FairSmith.core.bundle import Allocation, Bundle, bundle_items
from FairSmith.core.instance import Instance
from FairSmith.core.signals import Report, ReportProfile, Signal, SignalProfile
from FairSmith.core.valuation import BundleValuation
from FairSmith.data_types import MechanismKind
from FairSmith.errors import InvariantViolation
from FairSmith.fairness.shares import best_affordable_bundle
from FairSmith.lp.margin import MarginResult, PriceVector, strict_unaffordability_margin
from FairSmith.mechanisms.base_mechanism import BaseMechanism, Outcome
from FairSmith.outcome_cache import cache_outcome
from FairSmith.rational import format_rational

logger = logging.getLogger(__name__)


def family_membership(chooser: BundleValuation, bundle: Bundle, alpha: Fraction,
                      budget: Budget = DEFAULT_BUDGET) -> MarginResult:
    """
    Может ли bundle быть лучшим доступным набором выбирающего при какой-то цене

    Все строго лучшие наборы должны стать строго недоступными, а сам
    bundle остаться доступным.
    """
    target = chooser(bundle)
    better = [other for other in range(1 << chooser.m) if chooser(other) > target]
    return strict_unaffordability_margin(better, alpha, chooser.m, affordable_set=bundle, budget=budget)


def price_and_choose_family(instance: Instance, r1: Signal, b1: Signal,
                            budget: Budget = DEFAULT_BUDGET) -> List[Bundle]:
    """Всё семейство T(r_1, b_1) в лексикографическом порядке"""
    budget.check_lp_items(instance.m)
    if instance.m == 0:
        return [0]
    chooser = instance.valuation_at(1, (r1, b1))
    alpha = instance.entitlements[1]
    return [bundle for bundle in range(1 << instance.m) if family_membership(chooser, bundle, alpha, budget).strict]


class PriceAndChoose(BaseMechanism):
    kind = MechanismKind.PRICE_AND_CHOOSE
    name = "price-and-choose"

    def bid_space(self, agent: int) -> Sequence[Signal]:
        return self.instance.spaces[1 - agent].signals

    def truthful_guess(self, true_signals: SignalProfile) -> ReportProfile:
        first, second = true_signals
        return Report(first, second), Report(second, first)

    @cache_outcome()
    def price(self, r1: Signal, b1: Signal) -> Tuple[Bundle, PriceVector, Dict[str, Any]]:
        """
        Шаг назначающего цены при профиле (r_1, b_1)

        Кандидаты просматриваются по убыванию v_1(M \\ T), затем по маске;
        первый член семейства и есть T*, а цена из LP — p*.

        :return: (T*, p*, трасса)
        """
        instance = self.instance
        self.budget.check_lp_items(instance.m)
        if instance.m == 0:
            return 0, (), {"candidates_checked": 0, "offered": [], "margin": None}
        profile = (r1, b1)
        pricer = instance.valuation_at(0, profile)
        chooser = instance.valuation_at(1, profile)
        alpha = instance.entitlements[1]
        candidates = sorted(range(1 << instance.m), key=lambda bundle: (-pricer.complement(bundle), bundle))
        for checked, bundle in enumerate(candidates, start=1):
            membership = family_membership(chooser, bundle, alpha, self.budget)
            if membership.strict:
                logger.debug("pricer offers %s after %d candidates, margin %s",
                             bundle_items(bundle), checked, membership.margin)
                trace = {"candidates_checked": checked, "offered": list(bundle_items(bundle)),
                         "margin": format_rational(membership.margin),
                         "pricer_keeps_value": format_rational(pricer.complement(bundle))}
                return bundle, membership.prices, trace
        raise InvariantViolation("no bundle is an affordable best response under any price")

    def _allocate(self, reports: ReportProfile) -> Outcome:
        (r1, b1), (r2, b2) = ((report.signal, report.bid) for report in reports)
        offered, prices, price_trace = self.price(r1, b1)
        instance = self.instance
        alpha = instance.entitlements[1]
        chooser = instance.valuation_at(1, (b2, r2))
        best, best_value = best_affordable_bundle(chooser, prices, alpha)
        offered_price = sum((prices[j] for j in bundle_items(offered)), Fraction(0))
        takes_offer = offered_price <= alpha and chooser(offered) == best_value
        taken = offered if takes_offer else best
        trace = dict(price_trace, chooser_took="offered" if takes_offer else "other",
                     taken=list(bundle_items(taken)))
        return Outcome(Allocation((instance.full & ~taken, taken), instance.m), trace, prices)


def price_and_choose(instance: Instance, reports: ReportProfile) -> Outcome:
    return PriceAndChoose(instance).allocate(reports)
