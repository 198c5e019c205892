from .content import (DEFAULT_TOL, ContentResult, abs_contents, affine_det_identity_check,
                      as_vector, as_vectors, content, content_product_form, gram_matrix,
                      signed_contents)
from .frame import (SubspaceFrame, complement_frame, contains, distance_to, intersect_frames,
                    join_frames, orthonormal_frame, project)
from .angles import (dihedral_sine, dihedral_witness, elevation_angle, elevation_sine,
                     max_elevation, scaled_sine_bounds)
from .regions import Ball, Cone, Region, Tube, region_contains
