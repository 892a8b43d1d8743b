"""
Сигналы, пространства сигналов и отчёты агентов
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Sequence, Tuple, Union

from FairSmith.errors import InputError
from FairSmith.rational import as_rational, format_rational


@dataclass(frozen=True)
class Signal:
    """
    Элемент конечного пространства сигналов агента

    Числовой сигнал несёт вектор координат по предметам; сигнал
    одноэлементного пространства — только метку.
    """
    label: str
    coords: Tuple[Fraction, ...] = ()
    numeric: bool = False

    @classmethod
    def vector(cls, coords: Sequence[Any], location: str = None) -> 'Signal':
        values = tuple(as_rational(value, location) for value in coords)
        if any(value < 0 for value in values):
            raise InputError("signal coordinates must be non-negative", location)
        label = '(' + ','.join(format_rational(value) for value in values) + ')'
        return cls(label, values, True)

    @classmethod
    def token(cls, label: str = '*') -> 'Signal':
        return cls(label)

    def coord(self, j: int) -> Fraction:
        if not self.numeric:
            raise InputError(f"signal {self.label!r} has no numeric coordinates")
        if not 0 <= j < len(self.coords):
            raise InputError(f"signal coordinate {j} out of range for {self.label}")
        return self.coords[j]

    def to_jsonable(self) -> Union[str, list]:
        if self.numeric:
            return [format_rational(value) for value in self.coords]
        return self.label

    def __str__(self) -> str:
        return self.label


SignalProfile = Tuple[Signal, ...]


@dataclass(frozen=True)
class SignalSpace:
    """Конечное непустое пространство сигналов одного агента"""
    signals: Tuple[Signal, ...]
    kind: str = "vectors"

    def __post_init__(self):
        if not self.signals:
            raise InputError("signal space must be non-empty")
        positions = {signal: index for index, signal in enumerate(self.signals)}
        if len(positions) != len(self.signals):
            raise InputError("signal space lists a signal twice")
        object.__setattr__(self, '_positions', positions)

    @classmethod
    def singleton(cls, label: str = '*') -> 'SignalSpace':
        return cls((Signal.token(label),), "singleton")

    @classmethod
    def vectors(cls, vectors: Sequence[Sequence[Any]]) -> 'SignalSpace':
        return cls(tuple(Signal.vector(vector) for vector in vectors), "vectors")

    @classmethod
    def binary_cube(cls, m: int) -> 'SignalSpace':
        """Пространство {0,1}^m в лексикографическом порядке"""
        return cls.vectors(list(itertools.product((0, 1), repeat=m)))

    def index(self, signal: Signal) -> int:
        try:
            return self._positions[signal]
        except KeyError:
            raise InputError(f"unknown signal {signal.label!r}") from None

    def resolve(self, raw: Any, location: str = None) -> Signal:
        """
        Находит сигнал пространства по его JSON-представлению

        :param raw: Список "p/q" для числовых пространств или метка
        :param location: JSON-путь для сообщения об ошибке
        :return: Signal из этого пространства
        """
        if isinstance(raw, Signal):
            candidate = raw
        elif isinstance(raw, str):
            candidate = next((signal for signal in self.signals if signal.label == raw), None)
            if candidate is None:
                raise InputError(f"unknown signal {raw!r}", location)
            return candidate
        elif isinstance(raw, (list, tuple)):
            candidate = Signal.vector(raw, location)
        else:
            raise InputError(f"cannot read a signal from {type(raw).__name__}", location)
        if candidate not in self._positions:
            raise InputError(f"unknown signal {candidate.label!r}", location)
        return candidate

    def __contains__(self, signal: Signal) -> bool:
        return signal in self._positions

    def __iter__(self) -> Iterator[Signal]:
        return iter(self.signals)

    def __len__(self) -> int:
        return len(self.signals)


Bid = Union[Signal, SignalProfile]


@dataclass(frozen=True)
class Report:
    """Отчёт агента: собственный сигнал r_i и ставка-догадка b_i"""
    signal: Signal
    bid: Bid

    def to_jsonable(self) -> dict:
        if isinstance(self.bid, Signal):
            bid = self.bid.to_jsonable()
        else:
            bid = [signal.to_jsonable() for signal in self.bid]
        return {"signal": self.signal.to_jsonable(), "bid": bid}


ReportProfile = Tuple[Report, ...]


def reported_signals(reports: ReportProfile) -> SignalProfile:
    return tuple(report.signal for report in reports)


def perceived_profile(agent: int, true_signal: Signal, reports: ReportProfile) -> SignalProfile:
    """
    Воспринимаемый профиль r^(i) = (s_i, r_-i)

    :param agent: Индекс агента
    :param true_signal: Истинный сигнал агента
    :param reports: Профиль отчётов
    :return: Сообщённые сигналы, где координата agent заменена истинной
    """
    signals = list(reported_signals(reports))
    signals[agent] = true_signal
    return tuple(signals)


def replace_report(reports: ReportProfile, agent: int, report: Report) -> ReportProfile:
    """Односторонняя девиация: (r'_i, b'_i) вместо отчёта агента"""
    return reports[:agent] + (report,) + reports[agent + 1:]
