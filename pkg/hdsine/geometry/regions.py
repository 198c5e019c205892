from dataclasses import dataclass
from typing import Union

import numpy as np

from ..exceptions import GeometryInputError
from .content import as_vector
from .frame import SubspaceFrame, contains, distance_to

# 闭区域边界上的舍入余量
BOUNDARY_SLACK = 1e-12


@dataclass(frozen=True)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vector(self.center))
        if not self.radius > 0:
            raise GeometryInputError(f"ball radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class Tube:
    frame: SubspaceFrame
    height: float

    def __post_init__(self):
        if not self.height >= 0:
            raise GeometryInputError(f"tube height must be non-negative, got {self.height}")


@dataclass(frozen=True)
class Cone:
    """Cone(θ, L, x) = {u: dist(u, L) <= ‖u - x‖·sin θ}"""
    theta: float
    frame: SubspaceFrame
    apex: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "apex", as_vector(self.apex, ambient_dim=self.frame.ambient_dim))
        if not 0 <= self.theta <= np.pi / 2:
            raise GeometryInputError(f"cone angle must lie in [0, pi/2], got {self.theta}")
        if not contains(self.frame, self.apex):
            raise GeometryInputError("cone apex must lie in its frame")


Region = Union[Ball, Tube, Cone]


def region_contains(region: Region, u):
    """闭区域的成员判断, u 可以是 (..., n) 的批量输入"""
    u = np.asarray(u, dtype=float)
    if isinstance(region, Ball):
        dist = np.linalg.norm(u - region.center, axis=-1)
        out = dist <= region.radius * (1 + BOUNDARY_SLACK)
    elif isinstance(region, Tube):
        dist = distance_to(region.frame, u)
        out = np.asarray(dist) <= region.height + BOUNDARY_SLACK * np.maximum(1.0, region.height)
    elif isinstance(region, Cone):
        dist = np.asarray(distance_to(region.frame, u))
        reach = np.linalg.norm(u - region.apex, axis=-1)
        out = dist <= reach * np.sin(region.theta) + BOUNDARY_SLACK * np.maximum(1.0, reach)
    else:
        raise GeometryInputError(f"unknown region {type(region).__name__}")
    return bool(out) if np.ndim(out) == 0 else out
