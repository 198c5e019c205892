from .concentration import (ConcentrationConfig, c0_double_prime, c0_one_term, c0_prime,
                            cone_complement_containment_check, cone_i, cone_measure_bound_check,
                            cone_pair_containment_check, face_frame, in_U_C, in_U_C_one_term,
                            in_U_C_pair, log_radii, random_configuration, run_concentration,
                            s0_prime, theorem_fraction_bound, tube_measure_bound_check,
                            two_cone_containment_check)
