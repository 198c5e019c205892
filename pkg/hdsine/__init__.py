from .geometry import content, elevation_angle, orthonormal_frame
from .sines import PointConfig, SineKind, hypersine, polar_sine

__version__ = "2026.10.17"
