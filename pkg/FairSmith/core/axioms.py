"""
Проверка классов оценок перебором: монотонность, аддитивность,
XOS-согласованность и субаддитивность.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Tuple

from FairSmith.config import Budget, DEFAULT_BUDGET
from FairSmith.core.bundle import Bundle, bundle_items, iter_submasks
from FairSmith.core.instance import Instance
from FairSmith.core.signals import SignalProfile
from FairSmith.core.valuation import BundleValuation
from FairSmith.data_types import ConstraintSense, ValuationClass
from FairSmith.lp.simplex import Constraint, LinearProgram, lp_maximize

logger = logging.getLogger(__name__)

Witness = Tuple[int, SignalProfile, Bundle, Optional[Bundle]]


@dataclass(frozen=True)
class AxiomCheck:
    """
    Итог проверки: holds и, при нарушении, свидетель (агент, s, T, T')
    """
    claim: ValuationClass
    holds: bool
    witness: Optional[Witness] = None
    checked: int = 0
    exhaustive: bool = True


def _normalization_violation(bv: BundleValuation) -> Optional[Tuple[Bundle, Optional[Bundle]]]:
    if bv(0) != 0:
        return 0, None
    return None


def _additive_violation(bv: BundleValuation, m: int) -> Optional[Tuple[Bundle, None]]:
    singles = [bv(1 << j) for j in range(m)]
    for bundle in range(1 << m):
        if bv(bundle) != sum((singles[j] for j in bundle_items(bundle)), Fraction(0)):
            return bundle, None
    return None


def _has_supporting_clause(bv: BundleValuation, bundle: Bundle) -> bool:
    """Есть ли a >= 0 на T с a(T) = v(T) и a(S) <= v(S) для всех S из T"""
    items = bundle_items(bundle)
    width = len(items)
    position = {item: k for k, item in enumerate(items)}
    constraints = [Constraint(tuple([Fraction(1)] * width), ConstraintSense.EQ, bv(bundle))]
    for sub in iter_submasks(bundle):
        if sub in (0, bundle):
            continue
        row = [Fraction(0)] * width
        for item in bundle_items(sub):
            row[position[item]] = Fraction(1)
        constraints.append(Constraint(tuple(row), ConstraintSense.LE, bv(sub)))
    program = LinearProgram(width, tuple([Fraction(0)] * width), tuple(constraints))
    return lp_maximize(program).is_optimal


def _xos_violation(bv: BundleValuation, m: int) -> Optional[Tuple[Bundle, Optional[Bundle]]]:
    monotone = bv.monotone_violation()
    if monotone is not None:
        return monotone
    for bundle in range(1, 1 << m):
        if not _has_supporting_clause(bv, bundle):
            return bundle, None
    return None


def _pairs(m: int, sample: Optional[int], rng: random.Random) -> Iterator[Tuple[Bundle, Bundle]]:
    if sample is None:
        for first in range(1 << m):
            for second in range(first, 1 << m):
                yield first, second
    else:
        for _ in range(sample):
            yield rng.getrandbits(m) if m else 0, rng.getrandbits(m) if m else 0


def verify_valuation_axioms(instance: Instance, claim: ValuationClass,
                            budget: Budget = DEFAULT_BUDGET,
                            sample: Optional[int] = None, seed: int = 0) -> AxiomCheck:
    """
    Проверяет, что каждая оценка экземпляра принадлежит классу claim
    при каждом профиле сигналов

    :param instance: Экземпляр
    :param claim: Проверяемый класс
    :param budget: Бюджет перебора (2^m наборов, 4^m пар)
    :param sample: Если задано — число случайных пар для субаддитивности
    :param seed: Зерно генератора для выборки
    :return: AxiomCheck со свидетелем нарушения
    """
    m = instance.m
    rng = random.Random(seed)
    exhaustive = sample is None
    checked = 0
    if claim is ValuationClass.SUBADDITIVE and not exhaustive:
        budget.check("sampled subadditivity pairs", sample * instance.n * instance.profile_count, budget.max_pairs)
    else:
        budget.check_items(m)
        if claim is ValuationClass.SUBADDITIVE:
            budget.check("subadditivity pairs", (4 ** m) * instance.n * instance.profile_count, budget.max_pairs)

    for profile in instance.profiles():
        for agent in instance.agents:
            bv = instance.valuation_at(agent, profile)
            violation = _normalization_violation(bv)
            if violation is None and claim is ValuationClass.MONOTONE:
                violation = bv.monotone_violation()
            elif violation is None and claim is ValuationClass.ADDITIVE:
                violation = _additive_violation(bv, m)
            elif violation is None and claim is ValuationClass.XOS:
                violation = _xos_violation(bv, m)
            elif violation is None and claim is ValuationClass.SUBADDITIVE:
                for first, second in _pairs(m, sample, rng):
                    checked += 1
                    if bv(first) + bv(second) < bv(first | second):
                        violation = (first, second)
                        break
            checked += 1
            if violation is not None:
                logger.debug("%s violated by agent %d at bundles %s", claim.value, agent, violation)
                return AxiomCheck(claim, False, (agent, profile) + violation, checked, exhaustive)
    return AxiomCheck(claim, True, None, checked, exhaustive)
