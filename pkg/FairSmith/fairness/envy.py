"""
Проверки EF, EF1 и EFX
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from FairSmith.core.bundle import Allocation, bundle_items
from FairSmith.core.instance import Instance
from FairSmith.core.signals import SignalProfile
from FairSmith.core.valuation import BundleValuation
from FairSmith.data_types import FairnessNotion
from FairSmith.errors import InputError


@dataclass(frozen=True)
class EnvyCheck:
    """
    Вердикт envy-проверки

    witness = (агент, соперник, блокирующий предмет или None)
    """
    holds: bool
    witness: Optional[Tuple[int, int, Optional[int]]] = None


def envy_check_values(bv: BundleValuation, allocation: Allocation, agent: int,
                      notion: FairnessNotion) -> EnvyCheck:
    """
    Envy-проверка агента по уже зафиксированной оценке

    :param bv: Оценка агента при профиле вычисления
    :param allocation: Полное распределение
    :param agent: Проверяемый агент
    :param notion: EF, EF1 или EFX
    :return: EnvyCheck
    """
    if not notion.is_envy_based:
        raise InputError(f"{notion.value} is not an envy-based notion")
    own = bv(allocation.bundle(agent))
    for rival, bundle in enumerate(allocation.bundles):
        if rival == agent or own >= bv(bundle):
            continue
        if notion is FairnessNotion.EF:
            return EnvyCheck(False, (agent, rival, None))
        if notion is FairnessNotion.EF1:
            if not any(own >= bv(bundle & ~(1 << j)) for j in bundle_items(bundle)):
                return EnvyCheck(False, (agent, rival, None))
        else:
            for j in bundle_items(bundle):
                if own < bv(bundle & ~(1 << j)):
                    return EnvyCheck(False, (agent, rival, j))
    return EnvyCheck(True)


def envy_check(allocation: Allocation, agent: int, eval_profile: SignalProfile,
               notion: FairnessNotion, instance: Instance) -> EnvyCheck:
    """
    EF / EF1 / EFX для агента при профиле eval_profile

    EF1 выполняется для пустого набора соперника автоматически: пустой
    набор не вызывает зависти.
    """
    bv = instance.valuation_at(agent, instance.check_profile(eval_profile))
    return envy_check_values(bv, allocation, agent, notion)
