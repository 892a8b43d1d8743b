"""
Оценки агентов

Этот модуль содержит общий базовый класс оценки v_i(s, T) и его
реализации: аддитивную (выражения по предметам), XOS (максимум по
аддитивным клаузам) и табличную.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from FairSmith.core.bundle import Bundle, bundle_items, full_bundle
from FairSmith.core.expressions import Expr, Scale
from FairSmith.core.signals import SignalProfile, SignalSpace
from FairSmith.data_types import ValuationKind
from FairSmith.errors import DomainError, InputError
from FairSmith.rational import format_rational


class BundleValuation:
    """
    Оценка одного агента при фиксированном профиле сигналов: T -> v(T)

    Значения запоминаются.
    """

    def __init__(self, m: int, func: Callable[[Bundle], Fraction]):
        self.m = m
        self._func = func
        self._memo: Dict[Bundle, Fraction] = {}
        # производные величины (доли MMS, APS), посчитанные оракулами
        self.derived: Dict[Any, Any] = {}

    @classmethod
    def additive(cls, item_values: Sequence[Fraction]) -> 'BundleValuation':
        values = tuple(item_values)

        def total(bundle: Bundle) -> Fraction:
            return sum((values[j] for j in bundle_items(bundle)), Fraction(0))

        return cls(len(values), total)

    @classmethod
    def from_values(cls, m: int, values: Sequence[Fraction]) -> 'BundleValuation':
        """Табличная оценка по списку из 2^m значений"""
        if len(values) != 1 << m:
            raise InputError(f"expected {1 << m} bundle values, got {len(values)}")
        table = tuple(values)
        return cls(m, table.__getitem__)

    @property
    def full(self) -> Bundle:
        return full_bundle(self.m)

    def __call__(self, bundle: Bundle) -> Fraction:
        value = self._memo.get(bundle)
        if value is None:
            value = self._func(bundle)
            self._memo[bundle] = value
        return value

    def values(self) -> List[Fraction]:
        """Значения всех 2^m наборов (вызывающий проверяет бюджет)"""
        return [self(bundle) for bundle in range(1 << self.m)]

    def complement(self, bundle: Bundle) -> Fraction:
        return self(self.full & ~bundle)

    def monotone_violation(self) -> Optional[Tuple[Bundle, Optional[Bundle]]]:
        """
        Первое нарушение неотрицательности или монотонности

        :return: (T, None) при v(T) < 0, (T, T + j) при v(T + j) < v(T), иначе None
        """
        for bundle in range(1 << self.m):
            value = self(bundle)
            if value < 0:
                return bundle, None
            for j in range(self.m):
                if not bundle >> j & 1 and self(bundle | 1 << j) < value:
                    return bundle, bundle | 1 << j
        return None


class BaseValuation(ABC):
    """
    Общий базовый класс публично известной оценки v_i: S x 2^M -> Q>=0
    """
    kind: ValuationKind

    @property
    @abstractmethod
    def m(self) -> int:
        pass

    @abstractmethod
    def value(self, profile: SignalProfile, bundle: Bundle) -> Fraction:
        pass

    def at(self, profile: SignalProfile) -> BundleValuation:
        """Оценка при фиксированном профиле сигналов"""
        return BundleValuation(self.m, lambda bundle: self.value(profile, bundle))

    def agents(self) -> Optional[FrozenSet[int]]:
        """
        Агенты, от сигналов которых зависит оценка

        None означает, что зависимость не выражена синтаксически.
        """
        return None

    def validate(self, n: int, m: int, spaces: Sequence[SignalSpace]) -> None:
        if self.m != m:
            raise InputError(f"valuation is defined over {self.m} items, instance has {m}")

    @abstractmethod
    def to_jsonable(self) -> Dict[str, Any]:
        pass


def _check_item_values(values: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    for j, value in enumerate(values):
        if value < 0:
            raise InputError(f"item {j} evaluates to negative value {value}")
    return tuple(values)


def _validate_expressions(expressions: Sequence[Expr], n: int, spaces: Sequence[SignalSpace], m: int) -> None:
    for expr in expressions:
        for agent in expr.agents():
            if agent >= n:
                raise InputError(f"sig reads agent {agent}, instance has {n} agents")
            if spaces[agent].kind == "singleton":
                raise InputError(f"sig reads agent {agent} whose signal space is a singleton")
        if expr.max_coord() >= m:
            raise InputError(f"sig reads coordinate {expr.max_coord()}, signals have {m} coordinates")


@dataclass(frozen=True)
class AdditiveValuation(BaseValuation):
    """v(s, T) = сумма выражений предметов из T"""
    items: Tuple[Expr, ...]
    kind = ValuationKind.ADDITIVE

    @property
    def m(self) -> int:
        return len(self.items)

    def item_values(self, profile: SignalProfile) -> Tuple[Fraction, ...]:
        return _check_item_values([expr.evaluate(profile) for expr in self.items])

    def value(self, profile, bundle):
        values = self.item_values(profile)
        return sum((values[j] for j in bundle_items(bundle)), Fraction(0))

    def at(self, profile):
        return BundleValuation.additive(self.item_values(profile))

    def agents(self):
        return frozenset().union(*(expr.agents() for expr in self.items))

    def scaled(self, factor: Fraction) -> 'AdditiveValuation':
        """Умножает выражение каждого предмета на положительное factor"""
        if factor <= 0:
            raise DomainError("scaling factor must be positive")
        return AdditiveValuation(tuple(Scale(factor, expr) for expr in self.items))

    def validate(self, n, m, spaces):
        super().validate(n, m, spaces)
        _validate_expressions(self.items, n, spaces, m)

    def to_jsonable(self):
        return {"kind": self.kind.value, "items": [expr.to_jsonable() for expr in self.items]}


@dataclass(frozen=True)
class XOSValuation(BaseValuation):
    """v(s, T) = максимум по клаузам a^l суммы a^l_j по j из T"""
    clauses: Tuple[Tuple[Expr, ...], ...]
    kind = ValuationKind.XOS

    def __post_init__(self):
        if not self.clauses:
            raise InputError("XOS valuation needs at least one clause")
        if len({len(clause) for clause in self.clauses}) != 1:
            raise InputError("XOS clauses must cover the same number of items")

    @property
    def m(self) -> int:
        return len(self.clauses[0])

    def clause_values(self, profile: SignalProfile) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(_check_item_values([expr.evaluate(profile) for expr in clause])
                     for clause in self.clauses)

    def value(self, profile, bundle):
        return self.at(profile)(bundle)

    def at(self, profile):
        clauses = self.clause_values(profile)

        def best(bundle: Bundle) -> Fraction:
            chosen = bundle_items(bundle)
            return max(sum((clause[j] for j in chosen), Fraction(0)) for clause in clauses)

        return BundleValuation(self.m, best)

    def agents(self):
        return frozenset().union(*(expr.agents() for clause in self.clauses for expr in clause))

    def scaled(self, factor: Fraction) -> 'XOSValuation':
        if factor <= 0:
            raise DomainError("scaling factor must be positive")
        return XOSValuation(tuple(tuple(Scale(factor, expr) for expr in clause) for clause in self.clauses))

    def validate(self, n, m, spaces):
        super().validate(n, m, spaces)
        for clause in self.clauses:
            _validate_expressions(clause, n, spaces, m)

    def to_jsonable(self):
        return {"kind": self.kind.value,
                "clauses": [[expr.to_jsonable() for expr in clause] for clause in self.clauses]}


@dataclass(frozen=True)
class TableValuation(BaseValuation):
    """
    Явная таблица (индекс профиля, набор) -> значение

    Профили нумеруются в порядке перебора произведения пространств
    (лексикографически по агентам, внутри — в порядке объявления).
    Одна строка означает оценку, не зависящую от сигналов.
    """
    rows: Tuple[Tuple[Fraction, ...], ...]
    spaces: Tuple[SignalSpace, ...]
    kind = ValuationKind.TABLE

    def __post_init__(self):
        if not self.rows:
            raise InputError("table valuation needs at least one row")
        width = len(self.rows[0])
        if width & (width - 1):
            raise InputError(f"table rows must have 2^m entries, got {width}")
        for index, row in enumerate(self.rows):
            if len(row) != width:
                raise InputError(f"table row {index} has {len(row)} entries, expected {width}")
            if row[0] != 0:
                raise InputError(f"table row {index}: value of the empty bundle must be 0")
            if any(value < 0 for value in row):
                raise InputError(f"table row {index} contains a negative value")
            violation = BundleValuation.from_values(width.bit_length() - 1, row).monotone_violation()
            if violation is not None:
                smaller, larger = violation
                raise InputError(f"table row {index} is not monotone: "
                                 f"v({larger}) = {format_rational(row[larger])} < "
                                 f"v({smaller}) = {format_rational(row[smaller])}")

    @property
    def m(self) -> int:
        return len(self.rows[0]).bit_length() - 1

    def profile_index(self, profile: SignalProfile) -> int:
        index = 0
        for space, signal in zip(self.spaces, profile):
            index = index * len(space) + space.index(signal)
        return index

    def value(self, profile, bundle):
        if len(self.rows) == 1:
            return self.rows[0][bundle]
        return self.rows[self.profile_index(profile)][bundle]

    def at(self, profile):
        row = self.rows[0] if len(self.rows) == 1 else self.rows[self.profile_index(profile)]
        return BundleValuation.from_values(self.m, row)

    def agents(self):
        return frozenset() if len(self.rows) == 1 else None

    def validate(self, n, m, spaces):
        super().validate(n, m, spaces)
        if tuple(spaces) != self.spaces:
            raise InputError("table valuation was built for different signal spaces")
        total = 1
        for space in spaces:
            total *= len(space)
        if len(self.rows) not in (1, total):
            raise InputError(f"table has {len(self.rows)} rows, expected 1 or {total} (one per signal profile)")

    def to_jsonable(self):
        return {"kind": self.kind.value,
                "values": [[format_rational(value) for value in row] for row in self.rows]}
