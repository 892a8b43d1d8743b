"""
Cut-&-Choose для двух агентов с взаимозависимыми оценками

Агент 0 режет, агент 1 выбирает. Ставка каждого агента — догадка о
сигнале другого: B_0 = S_1, B_1 = S_0.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, Sequence, Tuple

from FairSmith.core.bundle import Allocation, Bundle, bundle_items
from FairSmith.core.signals import Report, ReportProfile, Signal, SignalProfile
from FairSmith.data_types import MechanismKind
from FairSmith.fairness.shares import plaut_roughgarden_cut, two_part_maximin
from FairSmith.mechanisms.base_mechanism import BaseMechanism, Outcome
from FairSmith.outcome_cache import cache_outcome
from FairSmith.rational import format_rational

logger = logging.getLogger(__name__)


class CutAndChoose(BaseMechanism):
    kind = MechanismKind.CUT_AND_CHOOSE
    name = "cut-and-choose"

    def bid_space(self, agent: int) -> Sequence[Signal]:
        return self.instance.spaces[1 - agent].signals

    def truthful_guess(self, true_signals: SignalProfile) -> ReportProfile:
        first, second = true_signals
        return Report(first, second), Report(second, first)

    @cache_outcome()
    def cut(self, r1: Signal, b1: Signal) -> Tuple[Bundle, Dict[str, Any]]:
        """
        Шаг резчика при профиле (r_1, b_1)

        Семейство T содержит наборы, которые выбирающий (по мнению резчика)
        ценит не меньше дополнения; xi — лучшее, что резчик может сохранить.

        :return: (T*, трасса)
        """
        instance = self.instance
        self.budget.check_items(instance.m)
        profile = (r1, b1)
        cutter = instance.valuation_at(0, profile)
        chooser = instance.valuation_at(1, profile)

        family = [bundle for bundle in range(1 << instance.m) if chooser(bundle) >= chooser.complement(bundle)]
        xi = max(cutter.complement(bundle) for bundle in family)
        mms = two_part_maximin(cutter, self.budget)
        if xi > mms:
            offered = next(bundle for bundle in family if cutter.complement(bundle) == xi)
            branch = "xi"
        else:
            offered = plaut_roughgarden_cut(cutter, self.budget)
            branch = "balanced-cut"
        logger.debug("cutter branch %s: xi=%s, mms=%s, offered %s", branch, xi, mms, bundle_items(offered))
        trace = {"family_size": len(family), "xi": format_rational(xi), "cutter_mms": format_rational(mms),
                 "branch": branch, "offered": list(bundle_items(offered))}
        return offered, trace

    def _allocate(self, reports: ReportProfile) -> Outcome:
        (r1, b1), (r2, b2) = ((report.signal, report.bid) for report in reports)
        offered, cut_trace = self.cut(r1, b1)
        chooser = self.instance.valuation_at(1, (b2, r2))
        rest = self.instance.full & ~offered
        takes_offer = chooser(offered) >= chooser(rest)
        taken = offered if takes_offer else rest
        trace = dict(cut_trace, chooser_took="offered" if takes_offer else "complement")
        return Outcome(Allocation((self.instance.full & ~taken, taken), self.instance.m), trace)


def cut_and_choose(instance, reports: ReportProfile) -> Outcome:
    return CutAndChoose(instance).allocate(reports)


def cutter_guarantee(mechanism: CutAndChoose, true_signals: SignalProfile) -> Fraction:
    """xi_1(s_1, s_2): гарантия резчика в равновесии с верными догадками"""
    _, trace = mechanism.cut(*true_signals)
    return Fraction(trace["xi"])
