"""
Строгая недоступность по цене

Открытые условия вида p(T) > alpha решаются единообразно: максимизируем
запас delta при p(T) >= alpha + delta и проверяем delta* > 0. Область
замкнута и ограничена, поэтому delta* достигается.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from FairSmith.config import Budget, DEFAULT_BUDGET
from FairSmith.core.bundle import bundle_items
from FairSmith.data_types import ConstraintSense
from FairSmith.lp.simplex import Constraint, LinearProgram, lp_maximize

logger = logging.getLogger(__name__)

PriceVector = Tuple[Fraction, ...]

# верхняя граница запаса: при пустом списке множеств задача иначе неограниченна
MARGIN_CAP = Fraction(1)


@dataclass(frozen=True)
class MarginResult:
    """
    Результат strict_unaffordability_margin

    feasible=False означает, что нестрогая система уже противоречива.
    """
    feasible: bool
    margin: Optional[Fraction] = None
    prices: Optional[PriceVector] = None

    @property
    def strict(self) -> bool:
        """Существует ли цена, делающая все множества строго недоступными"""
        return self.feasible and self.margin > 0


def minimal_sets(sets: Iterable[int]) -> List[int]:
    """
    Оставляет только минимальные по включению множества

    Ограничение p(T) >= a для T влечёт его для всех надмножеств T, так как p >= 0.
    """
    result: List[int] = []
    for candidate in sorted(set(sets), key=lambda mask: (bin(mask).count('1'), mask)):
        if not any(kept & candidate == kept for kept in result):
            result.append(candidate)
    return sorted(result)


def _indicator(mask: int, m: int) -> List[Fraction]:
    row = [Fraction(0)] * (m + 1)
    for item in bundle_items(mask):
        row[item] = Fraction(1)
    return row


def strict_unaffordability_margin(high_sets: Iterable[int], alpha: Fraction, m: int,
                                  affordable_set: Optional[int] = None,
                                  budget: Budget = DEFAULT_BUDGET) -> MarginResult:
    """
    Максимальный запас delta, с которым все high_sets дороже alpha

    Переменные p_1..p_m (симплекс P) и свободная delta. Ограничения:
    p(T) >= alpha + delta для каждого T из high_sets, p(affordable_set) <= alpha.

    :param high_sets: Множества, которые должны стоить строго больше alpha
    :param alpha: Бюджет (доля агента)
    :param m: Число предметов
    :param affordable_set: Множество, которое должно остаться доступным
    :param budget: Бюджет перебора
    :return: MarginResult; strict == True ровно когда нужная цена существует
    """
    budget.check_lp_items(m)
    high = minimal_sets(high_sets)
    delta = m
    constraints = [Constraint(tuple([Fraction(1)] * m + [Fraction(0)]), ConstraintSense.EQ, Fraction(1))]
    for mask in high:
        row = _indicator(mask, m)
        row[delta] = Fraction(-1)
        constraints.append(Constraint(tuple(row), ConstraintSense.GE, alpha))
    if affordable_set is not None:
        constraints.append(Constraint(tuple(_indicator(affordable_set, m)), ConstraintSense.LE, alpha))
    cap = [Fraction(0)] * (m + 1)
    cap[delta] = Fraction(1)
    constraints.append(Constraint(tuple(cap), ConstraintSense.LE, MARGIN_CAP))

    objective = tuple([Fraction(0)] * m + [Fraction(1)])
    program = LinearProgram(m + 1, objective, tuple(constraints), frozenset({delta}))
    result = lp_maximize(program)
    if not result.is_optimal:
        logger.debug("margin LP infeasible: %d high sets, alpha=%s", len(high), alpha)
        return MarginResult(False)
    prices = tuple(result.witness[:m])
    return MarginResult(True, result.value, prices)
