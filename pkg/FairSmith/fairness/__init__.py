from .envy import EnvyCheck, envy_check, envy_check_values
from .shares import (ApsResult, aps_share, best_affordable_bundle, bundle_prices, compute_aps,
                     iter_partitions, max_affordable_value, mms_partition, mms_share, partition_count,
                     plaut_roughgarden_cut, prop_share, prop_share_value, two_part_maximin,
                     worst_leftover_value, xos_prop_prices)
from .audit import FairnessReport, Verdict, audit, audit_at, requested_notions

__all__ = [
    'EnvyCheck', 'envy_check', 'envy_check_values',
    'ApsResult', 'aps_share', 'best_affordable_bundle', 'bundle_prices', 'compute_aps',
    'iter_partitions', 'max_affordable_value', 'mms_partition', 'mms_share', 'partition_count',
    'plaut_roughgarden_cut', 'prop_share', 'prop_share_value', 'two_part_maximin', 'worst_leftover_value',
    'xos_prop_prices',
    'FairnessReport', 'Verdict', 'audit', 'audit_at', 'requested_notions',
]
