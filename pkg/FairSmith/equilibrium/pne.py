"""
Проверка и перебор чистых равновесий Нэша при взаимозависимых оценках

Полезность агента i сравнивается при воспринимаемом профиле
r^(i) = (s_i, r_-i); этот профиль один и тот же для текущего отчёта и
для всех девиаций агента.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from FairSmith.config import Budget, DEFAULT_BUDGET
from FairSmith.core.bundle import Allocation
from FairSmith.core.instance import Instance
from FairSmith.core.signals import Report, ReportProfile, SignalProfile, perceived_profile, replace_report
from FairSmith.data_types import FairnessNotion
from FairSmith.fairness.audit import FairnessReport, audit_at
from FairSmith.mechanisms.base_mechanism import BaseMechanism, Outcome
from FairSmith.outcome_cache import OutcomeCache
from FairSmith.rational import format_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PneCertificate:
    """
    Вердикт проверки равновесия

    Для отрицательного вердикта: агент, выгодная девиация и положительный
    разрыв ценностей при воспринимаемом профиле.
    """
    is_pne: bool
    agent: Optional[int] = None
    deviation: Optional[Report] = None
    perceived: Optional[SignalProfile] = None
    current_value: Optional[Fraction] = None
    deviation_value: Optional[Fraction] = None
    checked: int = 0

    @property
    def gap(self) -> Optional[Fraction]:
        if self.is_pne:
            return None
        return self.deviation_value - self.current_value

    def replay(self, mechanism: BaseMechanism, reports: ReportProfile) -> bool:
        """Повторно запускает механизм и подтверждает заявленный разрыв"""
        if self.is_pne:
            return True
        bv = mechanism.instance.valuation_at(self.agent, self.perceived)
        current = bv(mechanism.allocate(reports).allocation.bundle(self.agent))
        deviated = replace_report(tuple(reports), self.agent, self.deviation)
        better = bv(mechanism.allocate(deviated).allocation.bundle(self.agent))
        return current == self.current_value and better == self.deviation_value and better > current

    def to_jsonable(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"is_pne": self.is_pne, "deviations_checked": self.checked}
        if not self.is_pne:
            data.update(agent=self.agent, deviation=self.deviation.to_jsonable(),
                        perceived_profile=[signal.to_jsonable() for signal in self.perceived],
                        current_value=format_rational(self.current_value),
                        deviation_value=format_rational(self.deviation_value),
                        gap=format_rational(self.gap))
        return data


def _run(mechanism: BaseMechanism, reports: ReportProfile, outcomes: Optional[OutcomeCache]) -> Outcome:
    if outcomes is None:
        return mechanism.allocate(reports)
    found, outcome = outcomes.get("allocate", reports)
    if not found:
        outcome = mechanism.allocate(reports)
        outcomes.set("allocate", reports, outcome)
    return outcome


def verify_pne(mechanism: BaseMechanism, instance: Instance, true_signals: SignalProfile,
               reports: ReportProfile, budget: Budget = DEFAULT_BUDGET,
               outcomes: Optional[OutcomeCache] = None) -> PneCertificate:
    """
    Проверяет все девиации каждого агента по полному S_i x B_i

    :param mechanism: Механизм, построенный на instance
    :param instance: Экземпляр
    :param true_signals: Истинный профиль s
    :param reports: Проверяемый профиль отчётов
    :param budget: Бюджет числа девиаций
    :param outcomes: Кэш результатов механизма по профилю отчётов
    :return: PneCertificate с первой найденной выгодной девиацией
    """
    true_signals = instance.check_profile(true_signals)
    reports = mechanism.validate_reports(reports)
    for agent in instance.agents:
        budget.check(f"deviations of agent {agent}", mechanism.report_space_size(agent), budget.max_report_space)
    allocation = _run(mechanism, reports, outcomes).allocation
    checked = 0
    for agent in instance.agents:
        perceived = perceived_profile(agent, true_signals[agent], reports)
        bv = instance.valuation_at(agent, perceived)
        current = bv(allocation.bundle(agent))
        for deviation in mechanism.report_space(agent):
            if deviation == reports[agent]:
                continue
            checked += 1
            outcome = _run(mechanism, replace_report(reports, agent, deviation), outcomes)
            value = bv(outcome.allocation.bundle(agent))
            if value > current:
                logger.debug("agent %d gains %s by deviating to %s", agent, value - current, deviation)
                return PneCertificate(False, agent, deviation, perceived, current, value, checked)
    return PneCertificate(True, checked=checked)


def report_space_size(mechanism: BaseMechanism) -> int:
    total = 1
    for agent in mechanism.instance.agents:
        total *= mechanism.report_space_size(agent)
    return total


def enumerate_pne(mechanism: BaseMechanism, instance: Instance, true_signals: SignalProfile,
                  budget: Budget = DEFAULT_BUDGET) -> List[Tuple[ReportProfile, Allocation]]:
    """
    Все профили-равновесия в лексикографическом порядке с их распределениями

    Результаты механизма кэшируются на время одного перебора.
    """
    budget.check("report profiles", report_space_size(mechanism), budget.max_report_space)
    outcomes = OutcomeCache()
    spaces = [list(mechanism.report_space(agent)) for agent in instance.agents]
    found = []
    for reports in itertools.product(*spaces):
        certificate = verify_pne(mechanism, instance, true_signals, reports, budget, outcomes)
        if certificate.is_pne:
            found.append((reports, _run(mechanism, reports, outcomes).allocation))
    logger.info("%d of %d report profiles are equilibria (cache hits %d)",
                len(found), report_space_size(mechanism), outcomes.hits)
    return found


@dataclass(frozen=True)
class EquilibriumAudit:
    """
    Аудит справедливости всех равновесий при истинных сигналах

    all_pne_fair равно None, если равновесий нет.
    """
    exists_fair_pne: bool
    all_pne_fair: Optional[bool]
    equilibria: Tuple[Tuple[ReportProfile, FairnessReport], ...] = field(default=())

    @property
    def fair_witness(self) -> Optional[Tuple[ReportProfile, FairnessReport]]:
        return next(((reports, report) for reports, report in self.equilibria if report.all_fair), None)

    @property
    def unfair_witness(self) -> Optional[Tuple[ReportProfile, FairnessReport]]:
        return next(((reports, report) for reports, report in self.equilibria if not report.all_fair), None)

    def to_jsonable(self) -> Dict[str, Any]:
        return {"exists_fair_pne": self.exists_fair_pne, "all_pne_fair": self.all_pne_fair,
                "pne_count": len(self.equilibria),
                "equilibria": [{"reports": [report.to_jsonable() for report in reports],
                                "fairness": fairness.to_jsonable()} for reports, fairness in self.equilibria]}


def audit_equilibria(mechanism: BaseMechanism, instance: Instance, true_signals: SignalProfile,
                     notions: Union[Iterable[FairnessNotion], Mapping[int, Iterable[FairnessNotion]]],
                     budget: Budget = DEFAULT_BUDGET) -> EquilibriumAudit:
    """
    Перебирает равновесия и проверяет каждое распределение при s

    :param notions: Множество понятий или словарь {агент: понятия}
    :return: EquilibriumAudit (существование и всеобщность справедливых равновесий)
    """
    true_signals = instance.check_profile(true_signals)
    if not isinstance(notions, Mapping):
        notions = set(notions)
    audited = tuple((reports, audit_at(allocation, true_signals, notions, instance, budget))
                    for reports, allocation in enumerate_pne(mechanism, instance, true_signals, budget))
    if not audited:
        logger.info("no pure Nash equilibrium at %s", true_signals)
    all_fair = all(report.all_fair for _, report in audited) if audited else None
    return EquilibriumAudit(any(report.all_fair for _, report in audited), all_fair, audited)
