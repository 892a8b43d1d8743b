"""
Общий базовый класс механизмов распределения

Механизм собирает от каждого агента отчёт (r_i, b_i) и детерминированно
возвращает распределение. Здесь же описаны пространства отчётов, которые
перебирает проверка равновесий.
"""

import itertools
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Optional, Sequence

from FairSmith.config import Budget, DEFAULT_BUDGET
from FairSmith.core.bundle import Allocation
from FairSmith.core.instance import Instance
from FairSmith.core.signals import Bid, Report, ReportProfile, SignalProfile
from FairSmith.data_types import MechanismKind
from FairSmith.errors import DomainError, InputError
from FairSmith.lp.margin import PriceVector
from FairSmith.rational import format_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Outcome:
    """Результат механизма: распределение, трасса решений и цены (если есть)"""
    allocation: Allocation
    trace: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)
    prices: Optional[PriceVector] = None

    def to_jsonable(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"allocation": self.allocation.to_lists(), "trace": self.trace}
        if self.prices is not None:
            data["prices"] = [format_rational(price) for price in self.prices]
        return data


class BaseMechanism(ABC):
    """
    Общий базовый класс для всех механизмов FairSmith

    :param instance: Экземпляр задачи
    :param budget: Бюджеты перебора внутренних оракулов
    """
    kind: MechanismKind
    name: str = "mechanism"

    def __init__(self, instance: Instance, budget: Budget = DEFAULT_BUDGET):
        if not self.kind.accepts(instance.n):
            raise DomainError(f"{self.name} is not defined for {instance.n} agents")
        self.instance = instance
        self.budget = budget

    @abstractmethod
    def bid_space(self, agent: int) -> Sequence[Bid]:
        """Допустимые ставки агента B_i"""
        pass

    @abstractmethod
    def truthful_guess(self, true_signals: SignalProfile) -> ReportProfile:
        """Профиль, где каждый агент сообщает правду и верно угадывает остальных"""
        pass

    @abstractmethod
    def _allocate(self, reports: ReportProfile) -> Outcome:
        pass

    def report_space(self, agent: int) -> Iterator[Report]:
        """Все отчёты (r_i, b_i) из S_i x B_i в порядке объявления"""
        for signal, bid in itertools.product(self.instance.spaces[agent].signals, self.bid_space(agent)):
            yield Report(signal, bid)

    def report_space_size(self, agent: int) -> int:
        return len(self.instance.spaces[agent]) * len(self.bid_space(agent))

    def _check_bid(self, agent: int, bid: Bid) -> None:
        if bid not in self.bid_space(agent):
            raise InputError(f"bid of agent {agent} is outside its bid space", f"reports[{agent}].bid")

    def validate_reports(self, reports: ReportProfile) -> ReportProfile:
        reports = tuple(reports)
        if len(reports) != self.instance.n:
            raise InputError(f"expected {self.instance.n} reports, got {len(reports)}", "reports")
        for agent, report in enumerate(reports):
            if report.signal not in self.instance.spaces[agent]:
                raise InputError(f"reported signal {report.signal.label!r} is not in the space of agent {agent}",
                                 f"reports[{agent}].signal")
            self._check_bid(agent, report.bid)
        return reports

    def allocate(self, reports: ReportProfile) -> Outcome:
        """
        Запускает механизм на профиле отчётов

        :param reports: Отчёт каждого агента
        :return: Outcome с полным распределением
        """
        return self._allocate(self.validate_reports(reports))

    def __call__(self, reports: ReportProfile) -> Outcome:
        return self.allocate(reports)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.instance.n}, m={self.instance.m})"
