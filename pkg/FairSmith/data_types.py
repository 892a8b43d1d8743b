"""
Общие типы данных для FairSmith

Этот модуль содержит перечисления, которые используются всеми подпакетами:
виды оценок, понятия справедливости, классы оценок, механизмы и LP.
"""

from enum import Enum
from typing import Iterable, List, Set

from FairSmith.errors import InputError


class ValuationKind(Enum):
    """Представления оценок в файле экземпляра"""

    ADDITIVE = "additive"
    XOS = "xos"
    TABLE = "table"
    SET_COVER = "set_cover"

    @classmethod
    def parse(cls, value: str, location: str = None) -> 'ValuationKind':
        try:
            return cls(value)
        except ValueError:
            supported = ', '.join(kind.value for kind in cls)
            raise InputError(f"unknown valuation kind {value!r} (supported: {supported})", location) from None


class FairnessNotion(Enum):
    """Понятия справедливости: envy-based и share-based"""

    EF = "EF"
    EF1 = "EF1"
    EFX = "EFX"
    PROP = "PROP"
    MMS = "MMS"
    APS = "APS"

    @property
    def is_envy_based(self) -> bool:
        return self in (FairnessNotion.EF, FairnessNotion.EF1, FairnessNotion.EFX)

    @property
    def is_share_based(self) -> bool:
        return not self.is_envy_based

    @property
    def requires_equal_entitlements(self) -> bool:
        """MMS определён только для равных долей"""
        return self is FairnessNotion.MMS

    @classmethod
    def parse(cls, value: str, location: str = None) -> 'FairnessNotion':
        try:
            return cls(value.strip().upper())
        except ValueError:
            supported = ', '.join(notion.value for notion in cls)
            raise InputError(f"unknown fairness notion {value!r} (supported: {supported})", location) from None

    @classmethod
    def parse_many(cls, values: Iterable[str]) -> Set['FairnessNotion']:
        """
        Разбирает список понятий, например из флага --notions "EF,MMS"

        :param values: Строки с именами понятий
        :return: Множество FairnessNotion
        """
        return {cls.parse(value) for value in values if value.strip()}

    @classmethod
    def ordered(cls, notions: Iterable['FairnessNotion']) -> List['FairnessNotion']:
        """Возвращает понятия в порядке объявления (для детерминированного вывода)"""
        chosen = set(notions)
        return [notion for notion in cls if notion in chosen]


class ValuationClass(Enum):
    """Классы оценок, проверяемые verify_valuation_axioms"""

    MONOTONE = "monotone"
    ADDITIVE = "additive"
    XOS = "xos"
    SUBADDITIVE = "subadditive"

    @classmethod
    def parse(cls, value: str) -> 'ValuationClass':
        aliases = {"xos-consistent": "xos"}
        value = aliases.get(value.strip().lower(), value.strip().lower())
        try:
            return cls(value)
        except ValueError:
            raise InputError(f"unknown valuation class {value!r}") from None


class MechanismKind(Enum):
    """Виды механизмов и требования к числу агентов"""

    CUT_AND_CHOOSE = "cut_and_choose"
    PRICE_AND_CHOOSE = "price_and_choose"
    BLACKBOX = "blackbox"

    def accepts(self, n: int) -> bool:
        if self is MechanismKind.BLACKBOX:
            return n >= 3
        return n == 2


class ConstraintSense(Enum):
    """Знак линейного ограничения"""

    LE = "<="
    GE = ">="
    EQ = "="


class LPStatus(Enum):
    """Результат решения линейной программы"""

    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
