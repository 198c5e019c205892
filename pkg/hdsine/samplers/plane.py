import math
from typing import Optional, Tuple

import numpy as np

from ..exceptions import GeometryInputError
from ..geometry import SubspaceFrame, distance_to, orthonormal_frame
from .base import MeasureSampler


def unit_ball_volume(m: int) -> float:
    """m 维单位球的体积 ω_m"""
    return math.pi ** (m / 2) / math.gamma(m / 2 + 1)


class PlaneSampler(MeasureSampler):
    """R^n 中一个 m 维仿射平面上的 Lebesgue 测度, γ = m

    参数:
    - dim (int): 平面维数 m, m == n 时为整个空间
    - ambient_dim (int): 空间维数 n
    - origin (np.ndarray): 平面经过的点, 默认为原点
    - basis (np.ndarray): 平面的方向向量, 默认为前 m 个坐标轴
    - rotation_seed (int): 给定时用随机正交方向代替坐标轴
    - density (float): 相对 Lebesgue 测度的倍数
    """

    def __init__(self,
                 dim: int,
                 ambient_dim: int,
                 origin: Optional[np.ndarray] = None,
                 basis: Optional[np.ndarray] = None,
                 rotation_seed: Optional[int] = None,
                 density: float = 1.0):
        if not 1 <= dim <= ambient_dim:
            raise GeometryInputError(f"plane dimension must lie in [1, {ambient_dim}], got {dim}")
        if density <= 0:
            raise GeometryInputError("density must be positive")
        self.dim = int(dim)
        self.ambient_dim = int(ambient_dim)
        self.gamma = float(dim)
        self.support_diam = float("inf")
        self.density = float(density)
        origin = np.zeros(ambient_dim) if origin is None else np.asarray(origin, dtype=float)
        if basis is None:
            if rotation_seed is None:
                basis = np.eye(ambient_dim)[:dim]
            else:
                rng = np.random.default_rng(rotation_seed)
                q, _ = np.linalg.qr(rng.normal(size=(ambient_dim, dim)))
                basis = q.T
        self.frame: SubspaceFrame = orthonormal_frame(np.asarray(basis, dtype=float) + origin, origin=origin)
        if self.frame.rank != dim:
            raise GeometryInputError("basis does not span a plane of the requested dimension")

    @property
    def c_mu(self) -> float:
        mass = self.density * unit_ball_volume(self.dim)
        return max(mass, 1.0 / mass)

    def on_support(self, points, tol: float = 1e-9) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        dist = np.atleast_1d(distance_to(self.frame, points))
        scale = np.maximum(1.0, np.linalg.norm(points - self.frame.origin, axis=1))
        return dist <= tol * scale

    def support_point(self, rng: np.random.Generator) -> np.ndarray:
        return self.frame.origin + rng.normal(size=self.dim) @ self.frame.basis

    def _draw_box(self, center, r, count, rng):
        coords = rng.uniform(-r, r, size=(count, self.dim))
        return center + coords @ self.frame.basis

    def box_mass(self, center, r) -> float:
        return self.density * (2 * r) ** self.dim

    def ball_mass(self, center, r: float, rng=None, samples: int = 0) -> Tuple[float, float]:
        self._check_ball(center, r)
        return self.density * unit_ball_volume(self.dim) * r ** self.dim, 0.0
