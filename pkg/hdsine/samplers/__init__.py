from .base import MeasureSampler, estimate_regularity
from .plane import PlaneSampler, unit_ball_volume
from .cantor import (CantorProductSampler, cantor_cdf, cantor_quantile, cantor_ratio,
                     in_cantor_set)
