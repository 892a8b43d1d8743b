"""
Бюджеты перебора

Все переборы (2^m подмножеств, разбиения, пространства отчётов) ограничены
явно. Превышение бюджета — ошибка, а не усечение.
"""

from dataclasses import dataclass, fields, replace
from typing import Any, Dict

from FairSmith.errors import BudgetExceededError, InputError


@dataclass(frozen=True)
class Budget:
    """Пределы перебора для оракулов, LP и проверки равновесий"""
    max_items: int = 10
    max_lp_items: int = 12
    max_partitions: int = 10 ** 6
    max_report_space: int = 10 ** 6
    max_pairs: int = 4 ** 8

    def check(self, quantity: str, count: int, limit: int) -> None:
        if count > limit:
            raise BudgetExceededError(quantity, count, limit)

    def check_items(self, m: int) -> None:
        """Проверяет, что 2^m подмножеств можно перебрать"""
        self.check("items for subset enumeration", m, self.max_items)

    def check_lp_items(self, m: int) -> None:
        self.check("items for LP oracle", m, self.max_lp_items)

    def with_overrides(self, **overrides: Any) -> 'Budget':
        """Возвращает копию бюджета, пропуская значения None"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    @classmethod
    def from_dict(cls, config: Dict[str, Any]) -> 'Budget':
        """
        Создает бюджет из словаря (флаги CLI или JSON)

        :param config: Словарь с ключами, совпадающими с полями Budget
        :return: Budget
        """
        known = {f.name for f in fields(cls)}
        unknown = set(config) - known
        if unknown:
            raise InputError(f"unknown budget keys: {sorted(unknown)}")
        values = {}
        for key, value in config.items():
            if value is None:
                continue
            if not isinstance(value, int) or value < 0:
                raise InputError(f"budget {key} must be a non-negative integer")
            values[key] = value
        return cls(**values)


DEFAULT_BUDGET = Budget()
