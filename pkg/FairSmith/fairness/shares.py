"""
Оракулы долей: PROP, MMS, APS и разрез Плаута–Рафгардена

Все оракулы работают с BundleValuation (оценкой агента при фиксированном
профиле), поэтому одинаково применимы к истинным, сообщённым и
воспринимаемым профилям. Вычисленные доли запоминаются в bv.derived.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from FairSmith.config import Budget, DEFAULT_BUDGET
from FairSmith.core.bundle import Bundle, bundle_items, full_bundle
from FairSmith.core.instance import Instance
from FairSmith.core.signals import SignalProfile
from FairSmith.core.valuation import BundleValuation
from FairSmith.data_types import FairnessNotion
from FairSmith.errors import InvariantViolation
from FairSmith.lp.margin import PriceVector, strict_unaffordability_margin

logger = logging.getLogger(__name__)


def prop_share_value(bv: BundleValuation, alpha: Fraction) -> Fraction:
    return alpha * bv(bv.full)


def prop_share(agent: int, eval_profile: SignalProfile, instance: Instance) -> Fraction:
    """PROP_i = alpha_i * v_i(s, M)"""
    bv = instance.valuation_at(agent, instance.check_profile(eval_profile))
    return prop_share_value(bv, instance.entitlements[agent])


def partition_count(m: int, n: int) -> int:
    """Число разбиений m предметов не более чем на n непомеченных частей"""
    # stirling[k] = S(i, k) для текущего i
    stirling = [1] + [0] * n
    for _ in range(m):
        for k in range(n, 0, -1):
            stirling[k] = k * stirling[k] + stirling[k - 1]
        stirling[0] = 0
    return sum(stirling)


def iter_partitions(m: int, n: int) -> Iterator[Tuple[Bundle, ...]]:
    """
    Разбиения M не более чем на n частей в каноническом порядке

    Предмет 0 всегда лежит в части 0, каждый следующий предмет идёт в
    уже открытую часть или открывает новую (restricted growth strings).
    Части дополняются пустыми наборами до n.
    """
    parts = [0] * n

    def assign(item: int, opened: int) -> Iterator[Tuple[Bundle, ...]]:
        if item == m:
            yield tuple(parts)
            return
        for part in range(min(opened + 1, n)):
            parts[part] |= 1 << item
            yield from assign(item + 1, max(opened, part + 1))
            parts[part] &= ~(1 << item)

    return assign(0, 0)


def mms_partition(bv: BundleValuation, n: int,
                  budget: Budget = DEFAULT_BUDGET) -> Tuple[Fraction, Tuple[Bundle, ...]]:
    """
    Первое в каноническом порядке максиминное разбиение

    :param bv: Оценка агента
    :param n: Число частей
    :param budget: Бюджет числа разбиений
    :return: (MMS, разбиение)
    """
    budget.check("partitions for MMS", partition_count(bv.m, n), budget.max_partitions)
    key = ('mms', n)
    if key in bv.derived:
        return bv.derived[key]
    best_value: Optional[Fraction] = None
    best_parts: Tuple[Bundle, ...] = (full_bundle(bv.m),) + (0,) * (n - 1)
    for parts in iter_partitions(bv.m, n):
        worst = min(bv(part) for part in parts)
        if best_value is None or worst > best_value:
            best_value, best_parts = worst, parts
    if best_value is None:
        best_value = Fraction(0)
    bv.derived[key] = (best_value, best_parts)
    return best_value, best_parts


def mms_share(agent: int, eval_profile: SignalProfile, instance: Instance,
              budget: Budget = DEFAULT_BUDGET) -> Fraction:
    """
    MMS агента перебором разбиений

    :raises DomainError: Доли агентов не равны
    """
    instance.check_notion(FairnessNotion.MMS)
    bv = instance.valuation_at(agent, instance.check_profile(eval_profile))
    return mms_partition(bv, instance.n, budget)[0]


def two_part_maximin(bv: BundleValuation, budget: Budget = DEFAULT_BUDGET) -> Fraction:
    """MMS при двух частях: max по T min(v(T), v(M \\ T))"""
    return mms_partition(bv, 2, budget)[0]


def plaut_roughgarden_cut(bv: BundleValuation, budget: Budget = DEFAULT_BUDGET) -> Bundle:
    """
    Лексикографически первый T* с v(T*) >= v(M \\ T*) = MMS и
    v(T* \\ {j}) <= v(M \\ T*) для всех j из T*

    :raises InvariantViolation: Такого набора нет (оценка немонотонна)
    """
    budget.check_items(bv.m)
    mms = two_part_maximin(bv, budget)
    for bundle in range(1 << bv.m):
        rest = bv.complement(bundle)
        if rest != mms or bv(bundle) < rest:
            continue
        if all(bv(bundle & ~(1 << j)) <= rest for j in bundle_items(bundle)):
            return bundle
    raise InvariantViolation("no balanced cut exists; the valuation is not monotone")


@dataclass(frozen=True)
class ApsResult:
    """
    APS и сертификат: при цене witness все наборы стоимостью
    не меньше rejected_threshold строго недоступны
    """
    value: Fraction
    witness: Optional[PriceVector] = None
    rejected_threshold: Optional[Fraction] = None


def compute_aps(bv: BundleValuation, alpha: Fraction,
                budget: Budget = DEFAULT_BUDGET) -> ApsResult:
    """
    APS пороговой процедурой

    Значения наборов перебираются по убыванию; порог z принимается, если
    никакая цена не делает все наборы со значением >= z строго недоступными.

    :param bv: Оценка агента
    :param alpha: Доля агента
    :param budget: Бюджет LP
    :return: ApsResult
    """
    budget.check_lp_items(bv.m)
    key = ('aps', alpha)
    if key in bv.derived:
        return bv.derived[key]
    values = bv.values()
    witness, rejected = None, None
    accepted = Fraction(0)
    # порог 0 принимается всегда: пустой набор доступен при любой цене
    for threshold in sorted(set(values), reverse=True):
        if threshold <= 0:
            break
        high = [bundle for bundle, value in enumerate(values) if value >= threshold]
        margin = strict_unaffordability_margin(high, alpha, bv.m, budget=budget)
        if not margin.strict:
            accepted = threshold
            break
        witness, rejected = margin.prices, threshold
        logger.debug("APS threshold %s rejected with margin %s", threshold, margin.margin)
    result = ApsResult(accepted, witness, rejected)
    bv.derived[key] = result
    return result


def aps_share(agent: int, eval_profile: SignalProfile, entitlement: Fraction, instance: Instance,
              budget: Budget = DEFAULT_BUDGET) -> Fraction:
    bv = instance.valuation_at(agent, instance.check_profile(eval_profile))
    return compute_aps(bv, entitlement, budget).value


def bundle_prices(prices: Sequence[Fraction]) -> List[Fraction]:
    """Цены всех 2^m наборов"""
    totals = [Fraction(0)] * (1 << len(prices))
    for bundle in range(1, len(totals)):
        low = bundle & -bundle
        totals[bundle] = totals[bundle ^ low] + prices[low.bit_length() - 1]
    return totals


def best_affordable_bundle(bv: BundleValuation, prices: Sequence[Fraction],
                           alpha: Fraction) -> Tuple[Bundle, Fraction]:
    """Лексикографически первый самый ценный набор с ценой не больше alpha"""
    best, best_value = 0, bv(0)
    for bundle, price in enumerate(bundle_prices(prices)):
        if price <= alpha and bv(bundle) > best_value:
            best, best_value = bundle, bv(bundle)
    return best, best_value


def max_affordable_value(bv: BundleValuation, prices: Sequence[Fraction], alpha: Fraction) -> Fraction:
    """Внутренний максимум определения APS при фиксированной цене"""
    return best_affordable_bundle(bv, prices, alpha)[1]


def xos_prop_prices(clauses: Sequence[Sequence[Fraction]]) -> PriceVector:
    """
    Цены p_j = a_j / v(M) по клаузе с наибольшей суммой

    Если противник покупает T при бюджете alpha, у XOS-агента остаётся
    M \\ T стоимостью не меньше (1 - alpha) * v(M).
    """
    if not clauses or not clauses[0]:
        return ()
    m = len(clauses[0])
    best = max(clauses, key=lambda clause: sum(clause, Fraction(0)))
    total = sum(best, Fraction(0))
    if total == 0:
        return tuple(Fraction(1, m) for _ in range(m))
    return tuple(Fraction(value) / total for value in best)


def worst_leftover_value(bv: BundleValuation, prices: Sequence[Fraction], opponent_alpha: Fraction) -> Fraction:
    """Наименьшая ценность M \\ T по всем T, которые противник может купить с бюджетом opponent_alpha"""
    return min(bv.complement(bundle) for bundle, price in enumerate(bundle_prices(prices)) if price <= opponent_alpha)
