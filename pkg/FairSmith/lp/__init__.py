from .simplex import Constraint, LinearProgram, LPResult, lp_maximize
from .margin import MarginResult, PriceVector, minimal_sets, strict_unaffordability_margin

__all__ = [
    'Constraint',
    'LinearProgram',
    'LPResult',
    'lp_maximize',
    'MarginResult',
    'PriceVector',
    'minimal_sets',
    'strict_unaffordability_margin',
]
