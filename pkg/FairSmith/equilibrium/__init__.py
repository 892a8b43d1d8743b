from .pne import (EquilibriumAudit, PneCertificate, audit_equilibria, enumerate_pne, report_space_size,
                  verify_pne)

__all__ = ['EquilibriumAudit', 'PneCertificate', 'audit_equilibria', 'enumerate_pne', 'report_space_size',
           'verify_pne']
