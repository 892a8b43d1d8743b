from .bundle import (Allocation, Bundle, bundle_from_items, bundle_items, bundle_size,
                     full_bundle, iter_bundles, iter_submasks)
from .signals import (Bid, Report, ReportProfile, Signal, SignalProfile, SignalSpace,
                      perceived_profile, replace_report, reported_signals)
from .expressions import Const, Expr, Max, Min, Scale, Sig, Sum, const, parse_expression, sig
from .valuation import (AdditiveValuation, BaseValuation, BundleValuation, TableValuation,
                        XOSValuation)
from .instance import Instance, eval_value
from .axioms import AxiomCheck, verify_valuation_axioms

__all__ = [
    'Allocation', 'Bundle', 'bundle_from_items', 'bundle_items', 'bundle_size', 'full_bundle',
    'iter_bundles', 'iter_submasks',
    'Bid', 'Report', 'ReportProfile', 'Signal', 'SignalProfile', 'SignalSpace',
    'perceived_profile', 'replace_report', 'reported_signals',
    'Const', 'Expr', 'Max', 'Min', 'Scale', 'Sig', 'Sum', 'const', 'parse_expression', 'sig',
    'AdditiveValuation', 'BaseValuation', 'BundleValuation', 'TableValuation', 'XOSValuation',
    'Instance', 'eval_value',
    'AxiomCheck', 'verify_valuation_axioms',
]
