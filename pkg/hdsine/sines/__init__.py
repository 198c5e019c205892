from .functions import (PointConfig, SineKind, SineValue, face_index, hyper_values, hypersine,
                        hypersine_product_form, law_of_sines_ratio, polar_sine,
                        polar_sine_product_form, polar_values, sine, sine_values, substituted)
from .identities import (IdentityContext, PCoefficients, QCoefficients, build_context,
                         det_affine_split, equal_distance_residual, face_contents,
                         hypersine_beta_choice, identity_beta, p_coefficients,
                         polar_uniform_residual, q_coefficients, sign_flip_reduction,
                         sine_addition_residual, two_term_residual, uniform_betas)
from .generalized import (GeneralizedSine, MembershipResult, carmichael_residual, cube_grid,
                          eval_sk, functional_equation_residual, membership_test,
                          named_function)
