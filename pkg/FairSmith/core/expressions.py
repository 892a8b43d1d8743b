"""
Выражения стоимости предмета

Грамматика: рациональные константы, sig(k, j) — координата j сигнала
агента k, сумма, умножение на скаляр, min и max.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, FrozenSet, Tuple

from FairSmith.core.signals import SignalProfile
from FairSmith.errors import InputError
from FairSmith.rational import as_rational, format_rational


class Expr(ABC):
    """Базовый класс выражений"""

    @abstractmethod
    def evaluate(self, profile: SignalProfile) -> Fraction:
        pass

    @abstractmethod
    def agents(self) -> FrozenSet[int]:
        """Агенты, чьи сигналы читает выражение"""
        pass

    @abstractmethod
    def max_coord(self) -> int:
        """Наибольший индекс координаты сигнала (-1, если сигналы не читаются)"""
        pass

    @abstractmethod
    def to_jsonable(self) -> Any:
        pass


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction

    def evaluate(self, profile):
        return self.value

    def agents(self):
        return frozenset()

    def max_coord(self):
        return -1

    def to_jsonable(self):
        return format_rational(self.value)


@dataclass(frozen=True)
class Sig(Expr):
    agent: int
    coord: int

    def evaluate(self, profile):
        return profile[self.agent].coord(self.coord)

    def agents(self):
        return frozenset({self.agent})

    def max_coord(self):
        return self.coord

    def to_jsonable(self):
        return {"sig": [self.agent, self.coord]}


@dataclass(frozen=True)
class Sum(Expr):
    terms: Tuple[Expr, ...]

    def evaluate(self, profile):
        return sum((term.evaluate(profile) for term in self.terms), Fraction(0))

    def agents(self):
        return frozenset().union(*(term.agents() for term in self.terms))

    def max_coord(self):
        return max((term.max_coord() for term in self.terms), default=-1)

    def to_jsonable(self):
        return {"add": [term.to_jsonable() for term in self.terms]}


@dataclass(frozen=True)
class Scale(Expr):
    factor: Fraction
    term: Expr

    def evaluate(self, profile):
        return self.factor * self.term.evaluate(profile)

    def agents(self):
        return self.term.agents()

    def max_coord(self):
        return self.term.max_coord()

    def to_jsonable(self):
        return {"scale": [format_rational(self.factor), self.term.to_jsonable()]}


@dataclass(frozen=True)
class Min(Expr):
    terms: Tuple[Expr, ...]

    def evaluate(self, profile):
        return min(term.evaluate(profile) for term in self.terms)

    def agents(self):
        return frozenset().union(*(term.agents() for term in self.terms))

    def max_coord(self):
        return max((term.max_coord() for term in self.terms), default=-1)

    def to_jsonable(self):
        return {"min": [term.to_jsonable() for term in self.terms]}


@dataclass(frozen=True)
class Max(Expr):
    terms: Tuple[Expr, ...]

    def evaluate(self, profile):
        return max(term.evaluate(profile) for term in self.terms)

    def agents(self):
        return frozenset().union(*(term.agents() for term in self.terms))

    def max_coord(self):
        return max((term.max_coord() for term in self.terms), default=-1)

    def to_jsonable(self):
        return {"max": [term.to_jsonable() for term in self.terms]}


def const(value) -> Const:
    return Const(as_rational(value))


def sig(agent: int, coord: int) -> Sig:
    return Sig(agent, coord)


def parse_expression(raw: Any, location: str = "expr") -> Expr:
    """
    Разбирает выражение из JSON

    "p/q" или целое — константа; {"sig": [k, j]}; {"add": [...]};
    {"scale": ["p/q", e]}; {"min": [...]}; {"max": [...]}.

    :param raw: JSON-значение
    :param location: JSON-путь для сообщений об ошибках
    :return: Expr
    """
    if isinstance(raw, (str, int)) and not isinstance(raw, bool):
        return Const(as_rational(raw, location))
    if not isinstance(raw, dict) or len(raw) != 1:
        raise InputError("expression must be a rational or a one-key object", location)
    (op, payload), = raw.items()
    if op == "sig":
        if (not isinstance(payload, list) or len(payload) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in payload)):
            raise InputError("sig expects [agent, coordinate]", location)
        return Sig(payload[0], payload[1])
    if op == "scale":
        if not isinstance(payload, list) or len(payload) != 2:
            raise InputError("scale expects [factor, expression]", location)
        return Scale(as_rational(payload[0], f"{location}.scale[0]"),
                     parse_expression(payload[1], f"{location}.scale[1]"))
    if op in ("add", "min", "max"):
        if not isinstance(payload, list) or not payload:
            raise InputError(f"{op} expects a non-empty list", location)
        terms = tuple(parse_expression(term, f"{location}.{op}[{i}]") for i, term in enumerate(payload))
        return {"add": Sum, "min": Min, "max": Max}[op](terms)
    raise InputError(f"unknown expression operator {op!r}", location)
