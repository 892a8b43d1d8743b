"""
Субаддитивная оценка, для которой PROP и APS несовместимы

Предметы — ненулевые векторы {0,1}^k (предмет j соответствует вектору j+1),
m = 2^k - 1. Покрывающие множества B_u = {j : <j, u> = 0 над GF(2)} для
ненулевых u. g(T) — наименьшее число множеств B_u, покрывающих T, и

    v(T) = g(T),          если g(T) < k/2
    v(T) = k - g(M \\ T), если g(M \\ T) < k/2
    v(T) = k/2            иначе.
"""

import functools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from FairSmith.core.bundle import Bundle, full_bundle
from FairSmith.core.signals import SignalProfile
from FairSmith.core.valuation import BaseValuation, BundleValuation
from FairSmith.data_types import ValuationKind
from FairSmith.errors import DomainError, InputError
from FairSmith.rational import format_rational

logger = logging.getLogger(__name__)

PRICE_GRID = 1000


class CoverFamily:
    """Покрывающие множества B_u и их дополнения для чётного k >= 6"""

    def __init__(self, k: int):
        if k < 6 or k % 2:
            raise DomainError(f"the construction needs an even k >= 6, got {k}")
        self.k = k
        self.m = (1 << k) - 1
        self.full = full_bundle(self.m)
        self.covers: Tuple[Bundle, ...] = tuple(
            sum(1 << j for j in range(self.m) if bin((j + 1) & u).count('1') % 2 == 0)
            for u in range(1, 1 << k))
        self.outside: Tuple[Bundle, ...] = tuple(self.full & ~cover for cover in self.covers)

    def covered_within(self, bundle: Bundle, limit: int, start: int = 0) -> bool:
        """Покрывается ли bundle не более чем limit множествами с индексами от start"""
        if bundle == 0:
            return True
        if limit == 0:
            return False
        for index in range(start, len(self.outside)):
            rest = bundle & self.outside[index]
            if rest == 0 or (limit > 1 and self.covered_within(rest, limit - 1, index + 1)):
                return True
        return False

    def small_cover_size(self, bundle: Bundle) -> Optional[int]:
        """g(bundle), если g < k/2, иначе None"""
        for size in range(self.k // 2):
            if self.covered_within(bundle, size):
                return size
        return None

    def value(self, bundle: Bundle) -> Fraction:
        size = self.small_cover_size(bundle)
        if size is not None:
            return Fraction(size)
        rest = self.small_cover_size(self.full & ~bundle)
        if rest is not None:
            return Fraction(self.k - rest)
        return Fraction(self.k, 2)


@functools.lru_cache(maxsize=None)
def cover_family(k: int) -> CoverFamily:
    return CoverFamily(k)


def set_cover_value(k: int, bundle: Bundle) -> Fraction:
    """
    v(bundle) для конструкции с параметром k

    :raises DomainError: k нечётно или меньше 6
    """
    family = cover_family(k)
    if bundle < 0 or bundle & ~family.full:
        raise InputError(f"bundle mask exceeds {family.m} items")
    return family.value(bundle)


@dataclass(frozen=True)
class SetCoverValuation(BaseValuation):
    """Оценка множественного покрытия, не зависящая от сигналов"""
    k: int
    kind = ValuationKind.SET_COVER

    def __post_init__(self):
        cover_family(self.k)

    @property
    def m(self) -> int:
        return (1 << self.k) - 1

    def value(self, profile: SignalProfile, bundle: Bundle) -> Fraction:
        return set_cover_value(self.k, bundle)

    def at(self, profile: SignalProfile) -> BundleValuation:
        return BundleValuation(self.m, cover_family(self.k).value)

    def agents(self):
        return frozenset()

    def to_jsonable(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "k": self.k}


def sample_prices(rng: random.Random, m: int, grid: int = PRICE_GRID) -> Tuple[Fraction, ...]:
    """Случайный вектор цен из симплекса: целые веса на сетке, нормированные к 1"""
    weights = [rng.randint(0, grid) for _ in range(m)]
    if not any(weights):
        weights[rng.randrange(m)] = 1
    total = sum(weights)
    return tuple(Fraction(weight, total) for weight in weights)


def _price(prices: Sequence[Fraction], bundle: Bundle) -> Fraction:
    total = Fraction(0)
    j = 0
    while bundle:
        if bundle & 1:
            total += prices[j]
        bundle >>= 1
        j += 1
    return total


@dataclass
class SetCoverReport:
    """Итог проверок конструкции; любой непустой список сбоев опровергает доказательство"""
    k: int
    m: int
    seed: int
    bundles_checked: int = 0
    prices_checked: int = 0
    family_failures: List[str] = field(default_factory=list)
    complement_failures: List[str] = field(default_factory=list)
    averaging_failures: List[str] = field(default_factory=list)
    witness_failures: List[str] = field(default_factory=list)
    uniform_outside_price: Optional[Fraction] = None
    separation: bool = False

    @property
    def prop_share(self) -> Fraction:
        return Fraction(self.k, 2)

    @property
    def aps_lower_bound(self) -> int:
        return self.k - 2

    @property
    def passed(self) -> bool:
        return self.separation and not (self.family_failures or self.complement_failures
                                        or self.averaging_failures or self.witness_failures)

    def to_jsonable(self) -> Dict[str, Any]:
        return {"k": self.k, "m": self.m, "seed": self.seed, "passed": self.passed,
                "bundles_checked": self.bundles_checked, "prices_checked": self.prices_checked,
                "family_failures": self.family_failures, "complement_failures": self.complement_failures,
                "averaging_failures": self.averaging_failures, "witness_failures": self.witness_failures,
                "uniform_outside_price": format_rational(self.uniform_outside_price)
                if self.uniform_outside_price is not None else None,
                "prop": format_rational(self.prop_share), "aps_lower_bound": self.aps_lower_bound,
                "separation": self.separation}


def _check_family(family: CoverFamily, report: SetCoverReport) -> None:
    half = (family.m + 1) // 2
    for index, outside in enumerate(family.outside):
        if bin(outside).count('1') != half:
            report.family_failures.append(f"|M \\ B_u| != {half} for u={index + 1}")
    for j in range(family.m):
        hits = sum(1 for outside in family.outside if outside >> j & 1)
        if hits != half:
            report.family_failures.append(f"item {j} lies outside {hits} cover sets, expected {half}")


def _check_complement(family: CoverFamily, bundle: Bundle, report: SetCoverReport) -> None:
    report.bundles_checked += 1
    total = family.value(bundle) + family.value(family.full & ~bundle)
    if total != family.k:
        report.complement_failures.append(f"v(T) + v(M \\ T) = {total} for T mask {bundle:#x}")


def _check_witness(family: CoverFamily, prices: Sequence[Fraction], report: SetCoverReport) -> Fraction:
    """
    Ищет u* с p(M \\ B_u*) <= (m+1)/(2m), затем самый дорогой предмет j
    в M \\ B_u*; набор M \\ (B_u* ∪ {j}) доступен и стоит k - 2
    """
    report.prices_checked += 1
    m = family.m
    outside_prices = [_price(prices, outside) for outside in family.outside]
    if sum(outside_prices, Fraction(0)) != Fraction(m + 1, 2):
        report.averaging_failures.append(f"sum of p(M \\ B_u) is {sum(outside_prices, Fraction(0))}")
    bound = Fraction(m + 1, 2 * m)
    chosen = next((index for index, price in enumerate(outside_prices) if price <= bound), None)
    if chosen is None:
        report.witness_failures.append("no cover set has a cheap complement")
        return Fraction(-1)
    outside = family.outside[chosen]
    items = [j for j in range(m) if outside >> j & 1]
    top = max(items, key=lambda j: (prices[j], -j))
    witness = outside & ~(1 << top)
    price = outside_prices[chosen] - prices[top]
    value = family.value(witness)
    if price > Fraction(1, 2) or value != family.k - 2:
        report.witness_failures.append(f"u={chosen + 1}: witness price {price}, value {value}")
    return outside_prices[chosen]


def subadditive_incompatibility_check(k: int = 6, random_bundles: int = 10 ** 4, random_prices: int = 10 ** 3,
                                      seed: int = 0) -> SetCoverReport:
    """
    Проверяет факты о конструкции на случайных наборах и ценах

    :param k: Чётное k >= 6
    :param random_bundles: Число случайных наборов для тождества v(T) + v(M \\ T) = k
    :param random_prices: Число случайных векторов цен для свидетеля APS >= k - 2
    :param seed: Зерно генератора
    :return: SetCoverReport
    """
    family = cover_family(k)
    rng = random.Random(seed)
    report = SetCoverReport(k, family.m, seed)
    _check_family(family, report)

    for bundle in (0, family.full) + family.covers:
        _check_complement(family, bundle, report)
    for _ in range(random_bundles):
        _check_complement(family, rng.getrandbits(family.m), report)
    logger.info("complement identity checked on %d bundles", report.bundles_checked)

    uniform = tuple(Fraction(1, family.m) for _ in range(family.m))
    report.uniform_outside_price = _check_witness(family, uniform, report)
    for _ in range(random_prices):
        _check_witness(family, sample_prices(rng, family.m), report)
    logger.info("APS witness checked on %d price vectors", report.prices_checked)

    report.separation = Fraction(k) < report.prop_share + report.aps_lower_bound
    return report
