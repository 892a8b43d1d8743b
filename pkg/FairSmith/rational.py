"""
Точная рациональная арифметика

Все числа в библиотеке — fractions.Fraction. Числа с плавающей точкой
отвергаются на входе, чтобы ветвления механизмов решались точно.
"""

from fractions import Fraction
from typing import Iterable, Union

from FairSmith.errors import InputError

RationalLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rational(value: RationalLike, location: str = None) -> Fraction:
    """
    Приводит значение к Fraction без потери точности

    :param value: int, Fraction или строка вида "p/q"
    :param location: JSON-путь для сообщения об ошибке
    :return: Fraction в несократимом виде
    """
    if isinstance(value, bool):
        raise InputError("booleans are not rationals", location)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if any(ch in text for ch in '.eE'):
            raise InputError(f"decimal notation is not allowed: {value!r}", location)
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational 'p/q': {value!r}", location) from None
    raise InputError(f"expected 'p/q' string or integer, got {type(value).__name__}", location)


def format_rational(value: Fraction) -> str:
    """Форматирует Fraction как "p/q" (целые — без знаменателя)"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rational_sum(values: Iterable[Fraction]) -> Fraction:
    return sum(values, ZERO)
