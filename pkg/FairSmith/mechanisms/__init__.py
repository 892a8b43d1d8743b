from typing import Callable, Dict

from FairSmith.config import Budget, DEFAULT_BUDGET
from FairSmith.core.instance import Instance
from FairSmith.data_types import FairnessNotion
from FairSmith.errors import InputError

from .base_mechanism import BaseMechanism, Outcome
from .cut_and_choose import CutAndChoose, cut_and_choose, cutter_guarantee
from .price_and_choose import PriceAndChoose, family_membership, price_and_choose, price_and_choose_family
from .blackbox import (BlackBoxMechanism, BruteForceFair, IndependentAlgorithm, RoundRobin,
                       blackbox_mechanism)

MECHANISMS: Dict[str, Callable[[Instance, Budget], BaseMechanism]] = {
    "cut-and-choose": lambda instance, budget: CutAndChoose(instance, budget),
    "price-and-choose": lambda instance, budget: PriceAndChoose(instance, budget),
    "blackbox-round-robin": lambda instance, budget: BlackBoxMechanism(instance, RoundRobin(), budget=budget),
}
for _notion in (FairnessNotion.MMS, FairnessNotion.EF1, FairnessNotion.EFX, FairnessNotion.PROP):
    MECHANISMS[f"blackbox-{_notion.value.lower()}"] = (
        lambda instance, budget, notion=_notion:
        BlackBoxMechanism(instance, BruteForceFair(notion, budget), budget=budget))


def build_mechanism(name: str, instance: Instance, budget: Budget = DEFAULT_BUDGET) -> BaseMechanism:
    """
    Создает механизм по имени из реестра

    :param name: Имя механизма, например "cut-and-choose" или "blackbox-mms"
    :param instance: Экземпляр
    :param budget: Бюджеты перебора
    :return: BaseMechanism
    """
    try:
        factory = MECHANISMS[name]
    except KeyError:
        raise InputError(f"unknown mechanism {name!r} (supported: {', '.join(sorted(MECHANISMS))})") from None
    return factory(instance, budget)


__all__ = [
    'BaseMechanism', 'Outcome',
    'CutAndChoose', 'cut_and_choose', 'cutter_guarantee',
    'PriceAndChoose', 'family_membership', 'price_and_choose', 'price_and_choose_family',
    'BlackBoxMechanism', 'BruteForceFair', 'IndependentAlgorithm', 'RoundRobin', 'blackbox_mechanism',
    'MECHANISMS', 'build_mechanism',
]
