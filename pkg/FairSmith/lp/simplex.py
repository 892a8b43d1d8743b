"""
Точное линейное программирование над рациональными числами

Задача решается симплекс-методом sympy (sympy.solvers.simplex.lpmax,
правило Бленда, арифметика Rational). Коэффициенты переводятся из
Fraction в Rational на входе и обратно на выходе; возвращённая вершина
проверяется подстановкой.
"""

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy import Add, Eq, Ge, Le, Rational, Symbol
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, lpmax

from FairSmith.data_types import ConstraintSense, LPStatus
from FairSmith.errors import InputError, InvariantViolation

logger = logging.getLogger(__name__)

RELATIONS = {ConstraintSense.LE: Le, ConstraintSense.GE: Ge, ConstraintSense.EQ: Eq}


@dataclass(frozen=True)
class Constraint:
    """Линейное ограничение coefficients · x (sense) rhs"""
    coefficients: Tuple[Fraction, ...]
    sense: ConstraintSense
    rhs: Fraction

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((c * v for c, v in zip(self.coefficients, x)), Fraction(0))
        if self.sense is ConstraintSense.LE:
            return lhs <= self.rhs
        if self.sense is ConstraintSense.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """
    Задача max objective · x при линейных ограничениях

    Переменные неотрицательны, кроме перечисленных в free_vars.
    """
    num_vars: int
    objective: Tuple[Fraction, ...]
    constraints: Tuple[Constraint, ...]
    free_vars: FrozenSet[int] = field(default_factory=frozenset)

    def validate(self) -> None:
        if self.num_vars < 0:
            raise InputError("number of variables must be non-negative")
        if len(self.objective) != self.num_vars:
            raise InputError(f"objective has {len(self.objective)} coefficients, expected {self.num_vars}")
        for index, constraint in enumerate(self.constraints):
            if len(constraint.coefficients) != self.num_vars:
                raise InputError(
                    f"constraint {index} has {len(constraint.coefficients)} coefficients, expected {self.num_vars}")
        for var in self.free_vars:
            if not 0 <= var < self.num_vars:
                raise InputError(f"free variable index {var} out of range")

    def is_satisfied(self, x: Sequence[Fraction]) -> bool:
        """Проверяет допустимость точки подстановкой"""
        if len(x) != self.num_vars:
            return False
        if any(x[i] < 0 for i in range(self.num_vars) if i not in self.free_vars):
            return False
        return all(constraint.holds(x) for constraint in self.constraints)

    def objective_value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x)), Fraction(0))


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    value: Optional[Fraction] = None
    witness: Optional[Tuple[Fraction, ...]] = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


def to_rational(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def to_fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def _linear_form(coefficients: Sequence[Fraction], variables: Sequence[Symbol]):
    return Add(*[to_rational(c) * x for c, x in zip(coefficients, variables) if c])


def _sympy_program(program: LinearProgram) -> Tuple[List[Symbol], object, list]:
    variables = [Symbol(f"x{i}") for i in range(program.num_vars)]
    relations = [RELATIONS[c.sense](_linear_form(c.coefficients, variables), to_rational(c.rhs))
                 for c in program.constraints]
    relations += [x >= 0 for i, x in enumerate(variables) if i not in program.free_vars]
    return variables, _linear_form(program.objective, variables), relations


@functools.lru_cache(maxsize=8192)
def lp_maximize(program: LinearProgram) -> LPResult:
    """
    Решает задачу линейного программирования точно

    :param program: Линейная программа
    :return: LPResult со статусом, оптимумом и вершиной-свидетелем
    :raises InvariantViolation: решатель вернул точку вне допустимой области
    """
    program.validate()
    variables, objective, relations = _sympy_program(program)

    if not any(getattr(r, 'free_symbols', None) for r in relations) and not objective.free_symbols:
        # переменных нет: ограничения уже вычислены до True/False
        if all(bool(r) for r in relations):
            return LPResult(LPStatus.OPTIMAL, Fraction(0), tuple([Fraction(0)] * program.num_vars))
        return LPResult(LPStatus.INFEASIBLE)

    try:
        value, point = lpmax(objective, relations)
    except InfeasibleLPError:
        logger.debug("LP infeasible: %d constraints, %d variables", len(program.constraints), program.num_vars)
        return LPResult(LPStatus.INFEASIBLE)
    except UnboundedLPError:
        logger.debug("LP unbounded: %d constraints, %d variables", len(program.constraints), program.num_vars)
        return LPResult(LPStatus.UNBOUNDED)

    values: Dict[Symbol, object] = dict(point)
    witness = tuple(to_fraction(values.get(x, 0)) for x in variables)
    optimum = to_fraction(value)
    if not program.is_satisfied(witness) or program.objective_value(witness) != optimum:
        raise InvariantViolation(f"LP solver returned an inconsistent vertex {witness} for value {optimum}")
    logger.debug("LP optimal value %s", optimum)
    return LPResult(LPStatus.OPTIMAL, optimum, witness)
