"""
FairSmith - Справедливый дележ неделимых товаров при взаимозависимых оценках

Механизмы Cut-&-Choose, Price-&-Choose и чёрный ящик, оракулы долей
PROP / MMS / APS, проверка равновесий Нэша и воспроизводимые контрпримеры.
"""

# Версия библиотеки
__version__ = "0.1.0"

# Модель
from .config import Budget, DEFAULT_BUDGET
from .data_types import FairnessNotion, MechanismKind, ValuationClass, ValuationKind
from .errors import BudgetExceededError, DomainError, FairSmithError, InputError, InvariantViolation
from .core import (Allocation, AdditiveValuation, Instance, Report, Signal, SignalSpace, TableValuation,
                   XOSValuation, verify_valuation_axioms)

# Справедливость
from .fairness import audit, audit_at, compute_aps, envy_check, mms_share, prop_share

# Механизмы и равновесия
from .mechanisms import (BlackBoxMechanism, BruteForceFair, CutAndChoose, PriceAndChoose, RoundRobin,
                         build_mechanism)
from .equilibrium import audit_equilibria, enumerate_pne, verify_pne

# Контрпримеры
from .counterexamples import impossibility_audit, subadditive_incompatibility_check, xos_mms_gap_check

__all__ = [
    'Budget', 'DEFAULT_BUDGET',
    'FairnessNotion', 'MechanismKind', 'ValuationClass', 'ValuationKind',
    'BudgetExceededError', 'DomainError', 'FairSmithError', 'InputError', 'InvariantViolation',
    'Allocation', 'AdditiveValuation', 'Instance', 'Report', 'Signal', 'SignalSpace', 'TableValuation',
    'XOSValuation', 'verify_valuation_axioms',
    'audit', 'audit_at', 'compute_aps', 'envy_check', 'mms_share', 'prop_share',
    'BlackBoxMechanism', 'BruteForceFair', 'CutAndChoose', 'PriceAndChoose', 'RoundRobin', 'build_mechanism',
    'audit_equilibria', 'enumerate_pne', 'verify_pne',
    'impossibility_audit', 'subadditive_incompatibility_check', 'xos_mms_gap_check',
]
