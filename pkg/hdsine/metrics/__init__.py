from .semimetric import (FAMILIES, SLACK_TOL, SYMMETRY_TOL, audit_rows, check_chain,
                         check_orthogonal_one_term, check_projection_monotonicity,
                         check_simplex_inequality, draw_trial, holds_with_slack,
                         identity_path_holds, instance_record, semimetric_audit, simplex_terms,
                         summarize)
