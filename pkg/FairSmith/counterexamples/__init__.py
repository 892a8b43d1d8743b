from .impossibility import (ImpossibilityAudit, adversarial_signal, base_profile, impossibility_audit,
                            impossibility_instance)
from .xos_gap import XosGapReport, xos_gap_instance, xos_mms_gap_check, xos_mms_gap_report
from .set_cover import (CoverFamily, SetCoverReport, SetCoverValuation, cover_family, sample_prices,
                        set_cover_value, subadditive_incompatibility_check)

__all__ = [
    'ImpossibilityAudit', 'adversarial_signal', 'base_profile', 'impossibility_audit', 'impossibility_instance',
    'XosGapReport', 'xos_gap_instance', 'xos_mms_gap_check', 'xos_mms_gap_report',
    'CoverFamily', 'SetCoverReport', 'SetCoverValuation', 'cover_family', 'sample_prices', 'set_cover_value',
    'subadditive_incompatibility_check',
]
