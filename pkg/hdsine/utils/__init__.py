from .utils import (FLOAT_FORMAT, chunk_indices, extras, get_logger,
                    parallel_map, print_config, trial_rng, write_rows)
