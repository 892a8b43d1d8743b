"""
XOS-пример, где никакое распределение не даёт MMS обоим агентам
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from FairSmith.core.bundle import Allocation
from FairSmith.core.expressions import const
from FairSmith.core.instance import Instance
from FairSmith.core.signals import SignalSpace
from FairSmith.core.valuation import XOSValuation
from FairSmith.fairness.shares import mms_share
from FairSmith.rational import format_rational


def _pair_clauses(*pairs: Tuple[int, int]) -> XOSValuation:
    # 1[x или y] + 1[x и y] на паре совпадает с аддитивной клаузой по x и y
    clauses = []
    for pair in pairs:
        clauses.append(tuple(const(1 if item in pair else 0) for item in range(4)))
    return XOSValuation(tuple(clauses))


def xos_gap_instance(identical: bool = False) -> Instance:
    """
    Предметы a, b, c, d = 0..3; v_1 = max по парам {a,b}, {c,d};
    v_2 = max по парам {a,d}, {b,c} (или v_2 = v_1 при identical)
    """
    first = _pair_clauses((0, 1), (2, 3))
    second = first if identical else _pair_clauses((0, 3), (1, 2))
    spaces = (SignalSpace.singleton(), SignalSpace.singleton())
    return Instance(2, 4, (Fraction(1, 2), Fraction(1, 2)), spaces, (first, second))


@dataclass(frozen=True)
class XosGapReport:
    holds: bool
    mms: Tuple[Fraction, Fraction]
    double_mms_allocations: Tuple[Allocation, ...]
    allocations_checked: int

    def to_jsonable(self) -> Dict[str, Any]:
        return {"holds": self.holds, "mms": [format_rational(value) for value in self.mms],
                "double_mms_allocations": [allocation.to_lists() for allocation in self.double_mms_allocations],
                "allocations_checked": self.allocations_checked}


def xos_mms_gap_report(identical: bool = False) -> XosGapReport:
    """Перебирает все 16 распределений двух агентов"""
    instance = xos_gap_instance(identical)
    profile = tuple(space.signals[0] for space in instance.spaces)
    mms = (mms_share(0, profile, instance), mms_share(1, profile, instance))
    good: List[Allocation] = []
    for first in range(1 << instance.m):
        allocation = Allocation.two_way(first, instance.m)
        if all(instance.eval_value(agent, profile, allocation.bundle(agent)) >= mms[agent] for agent in (0, 1)):
            good.append(allocation)
    holds = not good and mms == (2, 2)
    return XosGapReport(holds, mms, tuple(good), 1 << instance.m)


def xos_mms_gap_check(identical: bool = False) -> bool:
    return xos_mms_gap_report(identical).holds
