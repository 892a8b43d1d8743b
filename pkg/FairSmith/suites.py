"""
Случайные экземпляры и наборы проверок положительных результатов

Каждый набор воспроизводим по seed и возвращает SuiteReport со списком
сбоев. Пустой список сбоев означает, что свойство выполнено на всех
сгенерированных экземплярах.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from FairSmith.config import Budget, DEFAULT_BUDGET
from FairSmith.core.axioms import verify_valuation_axioms
from FairSmith.core.expressions import Expr, Scale, Sum, const, sig
from FairSmith.core.instance import Instance
from FairSmith.core.signals import SignalProfile, SignalSpace, replace_report
from FairSmith.core.valuation import AdditiveValuation, TableValuation, XOSValuation
from FairSmith.data_types import FairnessNotion, ValuationClass
from FairSmith.equilibrium.pne import enumerate_pne, verify_pne
from FairSmith.fairness.audit import FairnessReport, audit_at
from FairSmith.fairness.shares import (compute_aps, max_affordable_value, mms_share, prop_share, worst_leftover_value,
                                       xos_prop_prices)
from FairSmith.mechanisms import BlackBoxMechanism, CutAndChoose, PriceAndChoose, RoundRobin
from FairSmith.counterexamples.set_cover import sample_prices

logger = logging.getLogger(__name__)

ENVY = {FairnessNotion.EF, FairnessNotion.EFX, FairnessNotion.EF1}
ENTITLEMENTS = (Fraction(1, 3), Fraction(1, 4), Fraction(2, 5), Fraction(1, 2), Fraction(3, 5), Fraction(2, 3))


@dataclass
class SuiteReport:
    """Итог набора проверок"""
    name: str
    seed: int
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    lattice_violations: List[str] = field(default_factory=list)
    prop_violations: List[str] = field(default_factory=list)
    audited_allocations: int = 0

    @property
    def passed(self) -> bool:
        return not (self.failures or self.lattice_violations or self.prop_violations)

    def record_audit(self, case: int, report: FairnessReport, subadditive: bool) -> None:
        """Проверяет EF => EFX => EF1 и, для субаддитивных оценок, EF => PROP"""
        self.audited_allocations += 1
        self.lattice_violations.extend(report.lattice_failures(f"case {case}"))
        if subadditive:
            for agent in report.prop_violations_for_ef():
                self.prop_violations.append(f"case {case}, agent {agent}: EF holds but PROP fails")

    def to_jsonable(self) -> Dict[str, Any]:
        return {"name": self.name, "seed": self.seed, "cases": self.cases, "passed": self.passed,
                "failures": self.failures, "lattice_violations": self.lattice_violations,
                "prop_violations": self.prop_violations, "audited_allocations": self.audited_allocations}


def random_space(rng: random.Random, m: int, size: int, top: int = 3) -> SignalSpace:
    """Пространство из size различных векторов с координатами 0..top"""
    vectors = set()
    while len(vectors) < min(size, (top + 1) ** m):
        vectors.add(tuple(rng.randint(0, top) for _ in range(m)))
    return SignalSpace.vectors(sorted(vectors))


def random_mix(rng: random.Random, n: int, j: int, agents: Optional[Sequence[int]] = None) -> Expr:
    """c_0 + сумма c_k * sig(k, j) с небольшими неотрицательными целыми c"""
    terms: List[Expr] = [const(rng.randint(0, 2))]
    for agent in (range(n) if agents is None else agents):
        weight = rng.randint(0, 2)
        if weight:
            terms.append(Scale(Fraction(weight), sig(agent, j)))
    return Sum(tuple(terms))


def random_additive_instance(rng: random.Random, m: int, n: int = 2, space_size: int = 4,
                             entitlements: Optional[Tuple[Fraction, ...]] = None,
                             independent: bool = False) -> Instance:
    """
    Аддитивные оценки — линейные смеси сигналов по предметам

    При independent оценка агента читает только его собственный сигнал.
    """
    spaces = tuple(random_space(rng, m, rng.randint(1, space_size)) for _ in range(n))
    valuations = tuple(
        AdditiveValuation(tuple(random_mix(rng, n, j, [agent] if independent else None) for j in range(m)))
        for agent in range(n))
    alphas = entitlements or tuple(Fraction(1, n) for _ in range(n))
    return Instance(n, m, alphas, spaces, valuations)


def random_monotone_row(rng: random.Random, m: int, step: int = 2) -> Tuple[Fraction, ...]:
    """Случайная монотонная таблица: v(T) >= v(T \\ {j}) для всех j"""
    values = [Fraction(0)] * (1 << m)
    for bundle in range(1, 1 << m):
        below = max(values[bundle & ~(1 << j)] for j in range(m) if bundle >> j & 1)
        values[bundle] = below + rng.randint(0, step)
    return tuple(values)


def random_table_instance(rng: random.Random, m: int, space_size: int = 4) -> Instance:
    """Две монотонные табличные оценки, своя таблица на каждый профиль"""
    spaces = tuple(random_space(rng, m, rng.randint(1, space_size)) for _ in range(2))
    count = len(spaces[0]) * len(spaces[1])
    valuations = tuple(TableValuation(tuple(random_monotone_row(rng, m) for _ in range(count)), spaces)
                       for _ in range(2))
    return Instance(2, m, (Fraction(1, 2), Fraction(1, 2)), spaces, valuations)


def random_xos_instance(rng: random.Random, m: int, space_size: int = 4) -> Instance:
    """XOS у назначающего цены (2-3 клаузы), аддитивная оценка у выбирающего, неравные доли"""
    spaces = tuple(random_space(rng, m, rng.randint(1, space_size)) for _ in range(2))
    clauses = tuple(tuple(random_mix(rng, 2, j) for j in range(m)) for _ in range(rng.randint(2, 3)))
    chooser = AdditiveValuation(tuple(random_mix(rng, 2, j) for j in range(m)))
    alpha = rng.choice(ENTITLEMENTS)
    return Instance(2, m, (alpha, 1 - alpha), spaces, (XOSValuation(clauses), chooser))


def random_profile(rng: random.Random, instance: Instance) -> SignalProfile:
    return tuple(rng.choice(space.signals) for space in instance.spaces)


def _is_subadditive(instance: Instance, budget: Budget) -> bool:
    return verify_valuation_axioms(instance, ValuationClass.SUBADDITIVE, budget).holds


def cut_and_choose_suite(count: int = 100, seed: int = 0, max_items: int = 5,
                         budget: Budget = DEFAULT_BUDGET) -> SuiteReport:
    """
    Профиль верных догадок — равновесие Cut-&-Choose, распределение
    даёт резчику MMS и EFX, выбирающему EF
    """
    rng = random.Random(seed)
    report = SuiteReport("cut-and-choose", seed)
    for case in range(count):
        m = rng.randint(0, max_items)
        instance = random_additive_instance(rng, m) if case % 2 == 0 else random_table_instance(rng, m)
        truth = random_profile(rng, instance)
        mechanism = CutAndChoose(instance, budget)
        reports = mechanism.truthful_guess(truth)
        report.cases += 1
        if not verify_pne(mechanism, instance, truth, reports, budget).is_pne:
            report.failures.append(f"case {case}: truthful-guess profile is not an equilibrium")
            continue
        allocation = mechanism.allocate(reports).allocation
        notions = {0: ENVY | {FairnessNotion.MMS, FairnessNotion.PROP}, 1: ENVY | {FairnessNotion.PROP}}
        fairness = audit_at(allocation, truth, notions, instance, budget)
        for agent, notion in ((0, FairnessNotion.MMS), (0, FairnessNotion.EFX), (1, FairnessNotion.EF)):
            if not fairness.verdict(agent, notion).holds:
                report.failures.append(f"case {case}: agent {agent} misses {notion.value}")
        report.record_audit(case, fairness, _is_subadditive(instance, budget))
    logger.info("cut-and-choose suite: %d cases, %d failures", report.cases, len(report.failures))
    return report


def price_and_choose_suite(count: int = 100, seed: int = 0, max_items: int = 5,
                           budget: Budget = DEFAULT_BUDGET) -> SuiteReport:
    """
    Профиль верных догадок — равновесие Price-&-Choose; XOS-назначающий
    получает PROP, выбирающий — APS

    Отдельно проверяются цены по лучшей клаузе назначающего: что бы ни
    купил выбирающий, остаток стоит не меньше PROP назначающего.
    """
    rng = random.Random(seed)
    report = SuiteReport("price-and-choose", seed)
    for case in range(count):
        instance = random_xos_instance(rng, rng.randint(0, max_items))
        truth = random_profile(rng, instance)
        mechanism = PriceAndChoose(instance, budget)
        reports = mechanism.truthful_guess(truth)
        report.cases += 1
        pricer = instance.valuation_at(0, truth)
        prices = xos_prop_prices(instance.valuations[0].clause_values(truth))
        if worst_leftover_value(pricer, prices, instance.entitlements[1]) < prop_share(0, truth, instance):
            report.failures.append(f"case {case}: best-clause prices leave the pricer below PROP")
        if not verify_pne(mechanism, instance, truth, reports, budget).is_pne:
            report.failures.append(f"case {case}: truthful-guess profile is not an equilibrium")
            continue
        allocation = mechanism.allocate(reports).allocation
        notions = {0: ENVY | {FairnessNotion.PROP}, 1: ENVY | {FairnessNotion.PROP, FairnessNotion.APS}}
        fairness = audit_at(allocation, truth, notions, instance, budget)
        for agent, notion in ((0, FairnessNotion.PROP), (1, FairnessNotion.APS)):
            if not fairness.verdict(agent, notion).holds:
                report.failures.append(f"case {case}: agent {agent} misses {notion.value}")
        report.record_audit(case, fairness, subadditive=True)
    logger.info("price-and-choose suite: %d cases, %d failures", report.cases, len(report.failures))
    return report


def aps_corollary_suite(count: int = 20, seed: int = 0, max_items: int = 3,
                        budget: Budget = DEFAULT_BUDGET) -> SuiteReport:
    """Все равновесия Price-&-Choose при независимых аддитивных оценках дают обоим APS"""
    rng = random.Random(seed)
    report = SuiteReport("aps-corollary", seed)
    for case in range(count):
        alpha = rng.choice(ENTITLEMENTS)
        instance = random_additive_instance(rng, rng.randint(0, max_items), space_size=3,
                                            entitlements=(alpha, 1 - alpha), independent=True)
        if not instance.is_additive or not all(instance.is_independent(agent) for agent in instance.agents):
            report.failures.append(f"case {case}: generated instance is not independent and additive")
            continue
        truth = random_profile(rng, instance)
        mechanism = PriceAndChoose(instance, budget)
        report.cases += 1
        equilibria = enumerate_pne(mechanism, instance, truth, budget)
        if mechanism.truthful_guess(truth) not in [reports for reports, _ in equilibria]:
            report.failures.append(f"case {case}: truthful-guess profile missing from the equilibria")
        for reports, allocation in equilibria:
            fairness = audit_at(allocation, truth, ENVY | {FairnessNotion.APS, FairnessNotion.PROP}, instance, budget)
            if not fairness.holds(FairnessNotion.APS):
                report.failures.append(f"case {case}: equilibrium {allocation.to_lists()} misses APS")
            report.record_audit(case, fairness, subadditive=True)
    logger.info("APS corollary suite: %d cases, %d failures", report.cases, len(report.failures))
    return report


def blackbox_suite(count: int = 20, seed: int = 0, max_items: int = 4,
                   budget: Budget = DEFAULT_BUDGET) -> SuiteReport:
    """
    Чёрный ящик с round-robin при n = 3: профиль верных догадок — равновесие,
    распределение EF1, и никакая односторонняя девиация его не меняет
    """
    rng = random.Random(seed)
    report = SuiteReport("blackbox", seed)
    for case in range(count):
        instance = random_additive_instance(rng, rng.randint(0, max_items), n=3, space_size=2)
        truth = random_profile(rng, instance)
        mechanism = BlackBoxMechanism(instance, RoundRobin(), budget=budget)
        reports = mechanism.truthful_guess(truth)
        report.cases += 1
        allocation = mechanism.allocate(reports).allocation
        if not verify_pne(mechanism, instance, truth, reports, budget).is_pne:
            report.failures.append(f"case {case}: truthful-guess profile is not an equilibrium")
        for agent in instance.agents:
            for deviation in mechanism.report_space(agent):
                if mechanism.allocate(replace_report(reports, agent, deviation)).allocation != allocation:
                    report.failures.append(f"case {case}: agent {agent} changes the outcome alone")
                    break
        fairness = audit_at(allocation, truth, ENVY | {FairnessNotion.PROP}, instance, budget)
        if not fairness.holds(FairnessNotion.EF1):
            report.failures.append(f"case {case}: round-robin allocation is not EF1")
        report.record_audit(case, fairness, subadditive=True)
    logger.info("blackbox suite: %d cases, %d failures", report.cases, len(report.failures))
    return report


def share_consistency_suite(count: int = 200, seed: int = 0, max_items: int = 4, price_samples: int = 100,
                            budget: Budget = DEFAULT_BUDGET) -> SuiteReport:
    """
    На аддитивных экземплярах с равными долями: MMS <= PROP, APS <= PROP и
    APS <= лучшему доступному набору при каждой выбранной цене
    """
    rng = random.Random(seed)
    report = SuiteReport("share-oracles", seed)
    for case in range(count):
        m = rng.randint(0, max_items)
        instance = random_additive_instance(rng, m, space_size=1)
        profile = random_profile(rng, instance)
        report.cases += 1
        for agent in instance.agents:
            alpha = instance.entitlements[agent]
            prop = prop_share(agent, profile, instance)
            mms = mms_share(agent, profile, instance, budget)
            aps = compute_aps(instance.valuation_at(agent, profile), alpha, budget)
            if mms > prop or aps.value > prop:
                report.failures.append(f"case {case}, agent {agent}: MMS={mms}, APS={aps.value}, PROP={prop}")
            if m == 0:
                continue
            bv = instance.valuation_at(agent, profile)
            for _ in range(price_samples):
                if aps.value > max_affordable_value(bv, sample_prices(rng, m), alpha):
                    report.failures.append(f"case {case}, agent {agent}: APS exceeds a best affordable value")
                    break
            if aps.witness is not None and max_affordable_value(bv, aps.witness, alpha) >= aps.rejected_threshold:
                report.failures.append(f"case {case}, agent {agent}: APS witness price does not certify")
    logger.info("share oracle suite: %d cases, %d failures", report.cases, len(report.failures))
    return report


SUITES = {
    "cut-and-choose": cut_and_choose_suite,
    "price-and-choose": price_and_choose_suite,
    "aps-corollary": aps_corollary_suite,
    "blackbox": blackbox_suite,
    "share-oracles": share_consistency_suite,
}
