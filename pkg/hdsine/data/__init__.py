from .records import (AuditSummary, InstanceRecord, RadiusRecord, SimplexInequalityReport,
                      TubeBoundRecord, exact)
