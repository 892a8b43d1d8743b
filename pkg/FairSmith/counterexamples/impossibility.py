"""
Невозможность: ни один механизм не гарантирует, что все его равновесия
дают MMS (или EF1) распределения

Все агенты оценивают предмет j координатой j сигнала агента 0. Если
справедливое равновесие существует при сигнале из единиц, агент 0 может
иметь сигнал s', ценящий только свой собственный набор: те же отчёты
остаются равновесием, но распределение уже несправедливо.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Union

from FairSmith.config import Budget, DEFAULT_BUDGET
from FairSmith.core.bundle import Allocation
from FairSmith.core.expressions import sig
from FairSmith.core.instance import Instance
from FairSmith.core.signals import ReportProfile, Signal, SignalProfile, SignalSpace
from FairSmith.core.valuation import AdditiveValuation
from FairSmith.data_types import FairnessNotion
from FairSmith.equilibrium.pne import PneCertificate, enumerate_pne, verify_pne
from FairSmith.errors import BudgetExceededError, DomainError, InvariantViolation
from FairSmith.fairness.audit import FairnessReport, audit_at
from FairSmith.mechanisms import BaseMechanism, build_mechanism

logger = logging.getLogger(__name__)

MechanismFactory = Union[str, Callable[[Instance], BaseMechanism]]


def _variant(variant: Union[str, FairnessNotion]) -> FairnessNotion:
    notion = FairnessNotion.parse(variant) if isinstance(variant, str) else variant
    if notion not in (FairnessNotion.MMS, FairnessNotion.EF1):
        raise DomainError(f"impossibility variant must be MMS or EF1, got {notion.value}")
    return notion


def impossibility_instance(n: int, variant: Union[str, FairnessNotion]) -> Instance:
    """
    Экземпляр с m = n^2 (MMS) или m = 2n (EF1) предметами

    :param n: Число агентов (n >= 2)
    :param variant: MMS или EF1
    :return: Instance, где S_0 = {0,1}^m, остальные пространства одноэлементны
    """
    notion = _variant(variant)
    if n < 2:
        raise DomainError("the construction needs at least 2 agents")
    m = n * n if notion is FairnessNotion.MMS else 2 * n
    valuation = AdditiveValuation(tuple(sig(0, j) for j in range(m)))
    spaces = (SignalSpace.binary_cube(m),) + tuple(SignalSpace.singleton() for _ in range(n - 1))
    return Instance(n, m, tuple(Fraction(1, n) for _ in range(n)), spaces, tuple(valuation for _ in range(n)))


def base_profile(instance: Instance, base: Optional[Signal] = None) -> SignalProfile:
    """Профиль с сигналом base у агента 0 (по умолчанию все единицы)"""
    if base is None:
        base = Signal.vector([1] * instance.m)
    return instance.check_profile((base,) + tuple(space.signals[0] for space in instance.spaces[1:]))


def adversarial_signal(fair_allocation: Allocation, instance: Instance,
                       base: Optional[Signal] = None) -> SignalProfile:
    """
    s'_0j = s_0j * 1[j в наборе агента 0]

    :param fair_allocation: Справедливое распределение при base
    :param instance: Экземпляр из impossibility_instance
    :param base: Исходный сигнал агента 0 (по умолчанию все единицы)
    :return: Профиль s'
    """
    base = base_profile(instance, base)[0]
    own = fair_allocation.bundle(0)
    coords = [value if own >> j & 1 else 0 for j, value in enumerate(base.coords)]
    return base_profile(instance, Signal.vector(coords))


@dataclass(frozen=True)
class ImpossibilityAudit:
    """Итог проверки цепочки: справедливое равновесие -> то же равновесие при s' -> несправедливость"""
    reproduced: bool
    variant: FairnessNotion
    mechanism: str
    steps: List[str] = field(default_factory=list, compare=False)
    reports: Optional[ReportProfile] = None
    fair_report: Optional[FairnessReport] = None
    adversarial_profile: Optional[SignalProfile] = None
    adversarial_certificate: Optional[PneCertificate] = None
    unfair_report: Optional[FairnessReport] = None
    failing_step: Optional[str] = None
    lattice_violations: List[str] = field(default_factory=list, compare=False)

    def to_jsonable(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"reproduced": self.reproduced, "variant": self.variant.value,
                                "mechanism": self.mechanism, "steps": list(self.steps),
                                "failing_step": self.failing_step,
                                "lattice_violations": list(self.lattice_violations)}
        if self.reports is not None:
            data["reports"] = [report.to_jsonable() for report in self.reports]
        if self.fair_report is not None:
            data["fair_at_base"] = self.fair_report.to_jsonable()
        if self.adversarial_profile is not None:
            data["adversarial_profile"] = [signal.to_jsonable() for signal in self.adversarial_profile]
        if self.adversarial_certificate is not None:
            data["pne_at_adversarial"] = self.adversarial_certificate.to_jsonable()
        if self.unfair_report is not None:
            data["fairness_at_adversarial"] = self.unfair_report.to_jsonable()
        return data


ENVY_CHAIN = {FairnessNotion.EF, FairnessNotion.EFX, FairnessNotion.EF1}


def _lattice_failures(allocation: Allocation, profile: SignalProfile, label: str, instance: Instance,
                      budget: Budget) -> List[str]:
    return audit_at(allocation, profile, ENVY_CHAIN, instance, budget).lattice_failures(label)


def _check_zero_values(instance: Instance, profile: SignalProfile, allocation: Allocation) -> None:
    own = allocation.bundle(0)
    for agent in range(1, instance.n):
        bundle = allocation.bundle(agent)
        if bundle & own == 0 and instance.eval_value(agent, profile, bundle) != 0:
            raise InvariantViolation(f"agent {agent} values a bundle disjoint from agent 0's at the adversarial signal")


def impossibility_audit(mechanism: MechanismFactory, n: int, variant: Union[str, FairnessNotion],
                        base: Optional[Signal] = None, budget: Budget = DEFAULT_BUDGET) -> ImpossibilityAudit:
    """
    Воспроизводит цепочку невозможности против конкретного механизма

    Сначала проверяется профиль верных догадок, затем, если он не подошёл,
    перебираются все равновесия.

    :param mechanism: Имя механизма из реестра или фабрика Instance -> механизм
    :param n: Число агентов
    :param variant: MMS или EF1
    :param base: Истинный сигнал агента 0 (по умолчанию все единицы)
    :param budget: Бюджеты перебора
    :return: ImpossibilityAudit
    """
    notion = _variant(variant)
    instance = impossibility_instance(n, notion)
    built = build_mechanism(mechanism, instance, budget) if isinstance(mechanism, str) else mechanism(instance)
    truth = base_profile(instance, base)
    steps: List[str] = []
    name = built.name

    def give_up(step: str) -> ImpossibilityAudit:
        steps.append(step)
        logger.info("impossibility chain stops: %s", step)
        return ImpossibilityAudit(False, notion, name, steps, failing_step=step)

    found = None
    guess = built.truthful_guess(truth)
    if verify_pne(built, instance, truth, guess, budget).is_pne:
        report = audit_at(built.allocate(guess).allocation, truth, {notion}, instance, budget)
        if report.all_fair:
            found = (guess, report)
            steps.append("truthful-guess profile is a fair equilibrium at the base signal")
    if found is None:
        try:
            for reports, allocation in enumerate_pne(built, instance, truth, budget):
                report = audit_at(allocation, truth, {notion}, instance, budget)
                if report.all_fair:
                    found = (reports, report)
                    steps.append("enumeration found a fair equilibrium at the base signal")
                    break
        except BudgetExceededError as error:
            return give_up(f"no fair equilibrium among checked profiles and enumeration is out of budget: {error}")
    if found is None:
        return give_up("mechanism has no fair equilibrium at the base signal")

    reports, fair_report = found
    allocation = fair_report.allocation
    adversarial = adversarial_signal(allocation, instance, truth[0])
    lattice = _lattice_failures(allocation, truth, "base signal", instance, budget)
    lattice += _lattice_failures(allocation, adversarial, "adversarial signal", instance, budget)
    for message in lattice:
        logger.warning("envy lattice violated: %s", message)
    steps.append(f"adversarial signal keeps value only on {list(allocation.items(0))}")
    _check_zero_values(instance, adversarial, allocation)

    certificate = verify_pne(built, instance, adversarial, reports, budget)
    if not certificate.is_pne:
        steps.append(f"agent {certificate.agent} deviates profitably at the adversarial signal")
        return ImpossibilityAudit(False, notion, name, steps, reports, fair_report, adversarial, certificate,
                                  failing_step=steps[-1], lattice_violations=lattice)
    steps.append("same report profile is still an equilibrium at the adversarial signal")

    unfair = audit_at(allocation, adversarial, {notion}, instance, budget)
    if unfair.all_fair:
        steps.append(f"allocation is still {notion.value} at the adversarial signal")
        return ImpossibilityAudit(False, notion, name, steps, reports, fair_report, adversarial, certificate,
                                  unfair, failing_step=steps[-1], lattice_violations=lattice)
    steps.append(f"allocation violates {notion.value} at the adversarial signal")
    logger.info("impossibility chain reproduced for %s (%s, n=%d)", name, notion.value, n)
    return ImpossibilityAudit(True, notion, name, steps, reports, fair_report, adversarial, certificate, unfair,
                              lattice_violations=lattice)
