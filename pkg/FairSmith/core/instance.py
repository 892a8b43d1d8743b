"""
Экземпляр задачи I = (N, M, alpha, S, v_1, ..., v_n)
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Sequence, Tuple

from FairSmith.core.bundle import Bundle, full_bundle
from FairSmith.core.signals import Signal, SignalProfile, SignalSpace
from FairSmith.core.valuation import BaseValuation, BundleValuation, AdditiveValuation
from FairSmith.data_types import FairnessNotion
from FairSmith.errors import DomainError, InputError


@dataclass(frozen=True)
class Instance:
    """
    Неизменяемый экземпляр: агенты, предметы, доли, пространства сигналов и оценки

    :param n: Число агентов (n >= 2)
    :param m: Число предметов (m >= 0)
    :param entitlements: Доли alpha_i из (0, 1), сумма равна 1
    :param spaces: Конечные пространства сигналов по агентам
    :param valuations: Оценка каждого агента
    """
    n: int
    m: int
    entitlements: Tuple[Fraction, ...]
    spaces: Tuple[SignalSpace, ...]
    valuations: Tuple[BaseValuation, ...]

    def __post_init__(self):
        if self.n < 2:
            raise InputError(f"an instance needs at least 2 agents, got {self.n}")
        if self.m < 0:
            raise InputError("number of items must be non-negative")
        for name in ("entitlements", "spaces", "valuations"):
            if len(getattr(self, name)) != self.n:
                raise InputError(f"{name} must list exactly {self.n} entries", name)
        for agent, alpha in enumerate(self.entitlements):
            if not 0 < alpha < 1:
                raise InputError(f"entitlement {alpha} is not in (0, 1)", f"entitlements[{agent}]")
        if sum(self.entitlements, Fraction(0)) != 1:
            raise InputError("entitlements must sum to 1", "entitlements")
        for agent, space in enumerate(self.spaces):
            for signal in space:
                if signal.numeric and len(signal.coords) != self.m:
                    raise InputError(f"signal {signal.label} has {len(signal.coords)} coordinates, expected {self.m}",
                                     f"signal_spaces[{agent}]")
        for agent, valuation in enumerate(self.valuations):
            try:
                valuation.validate(self.n, self.m, self.spaces)
            except InputError as error:
                raise InputError(str(error), f"valuations[{agent}]") from None
        object.__setattr__(self, '_bundle_valuations', {})

    @property
    def full(self) -> Bundle:
        return full_bundle(self.m)

    @property
    def agents(self) -> range:
        return range(self.n)

    @property
    def has_equal_entitlements(self) -> bool:
        return all(alpha == Fraction(1, self.n) for alpha in self.entitlements)

    def check_notion(self, notion: FairnessNotion) -> None:
        """
        :raises DomainError: Понятие требует равных долей, а доли не равны
        """
        if notion.requires_equal_entitlements and not self.has_equal_entitlements:
            raise DomainError(f"{notion.value} is only defined for equal entitlements")

    @property
    def is_additive(self) -> bool:
        return all(isinstance(valuation, AdditiveValuation) for valuation in self.valuations)

    @property
    def profile_count(self) -> int:
        total = 1
        for space in self.spaces:
            total *= len(space)
        return total

    def profiles(self) -> Iterator[SignalProfile]:
        """Все профили сигналов в порядке файла экземпляра"""
        return itertools.product(*(space.signals for space in self.spaces))

    def check_profile(self, profile: Sequence[Signal]) -> SignalProfile:
        if len(profile) != self.n:
            raise InputError(f"signal profile has {len(profile)} entries, expected {self.n}")
        for agent, (space, signal) in enumerate(zip(self.spaces, profile)):
            if signal not in space:
                raise InputError(f"signal {signal.label!r} is not in the space of agent {agent}")
        return tuple(profile)

    def is_independent(self, agent: int) -> bool:
        """Оценка агента читает только его собственный сигнал"""
        used = self.valuations[agent].agents()
        return used is not None and used <= {agent}

    def valuation_at(self, agent: int, profile: SignalProfile) -> BundleValuation:
        """
        Оценка агента при фиксированном профиле (с запоминанием)

        :param agent: Индекс агента
        :param profile: Профиль сигналов
        :return: BundleValuation
        """
        cache: Dict = self._bundle_valuations
        key = (agent, profile)
        found = cache.get(key)
        if found is None:
            found = self.valuations[agent].at(profile)
            cache[key] = found
        return found

    def eval_value(self, agent: int, profile: SignalProfile, bundle: Bundle) -> Fraction:
        """
        v_agent(profile, bundle) точно

        :param agent: Индекс агента
        :param profile: Профиль сигналов из пространств экземпляра
        :param bundle: Битовая маска набора
        :return: Fraction
        """
        if not 0 <= agent < self.n:
            raise InputError(f"agent {agent} out of range 0..{self.n - 1}")
        if bundle < 0 or bundle & ~self.full:
            raise InputError(f"bundle mask {bundle} exceeds {self.m} items")
        return self.valuation_at(agent, self.check_profile(profile))(bundle)


def eval_value(agent: int, profile: SignalProfile, bundle: Bundle, instance: Instance) -> Fraction:
    return instance.eval_value(agent, profile, bundle)
