"""
Исключения FairSmith

Все ошибки библиотеки наследуют от FairSmithError. Ошибки входных данных и
ошибки области определения остаются ValueError, как и в валидации моделей.
"""

from typing import Optional


class FairSmithError(Exception):
    """Базовое исключение библиотеки"""


class InputError(FairSmithError, ValueError):
    """
    Некорректные входные данные (файл экземпляра, отчёты, сигналы)

    :param message: Текст ошибки
    :param location: JSON-путь к проблемному месту, если известен
    """

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class DomainError(FairSmithError, ValueError):
    """Операция не определена для данного экземпляра (например, MMS при неравных долях)"""


class BudgetExceededError(FairSmithError):
    """
    Превышен бюджет перебора. Никогда не заменяется молчаливым усечением.

    :param quantity: Что именно перебиралось
    :param count: Требуемое количество
    :param limit: Допустимый предел
    """

    def __init__(self, quantity: str, count: int, limit: int):
        self.quantity = quantity
        self.count = count
        self.limit = limit
        super().__init__(f"{quantity}: {count} exceeds budget {limit}")


class InvariantViolation(FairSmithError, AssertionError):
    """Нарушен внутренний инвариант (ошибка реализации или немонотонный вход)"""
