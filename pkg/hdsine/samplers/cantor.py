import math
from typing import Optional

import numpy as np

from ..exceptions import GeometryInputError
from .base import MeasureSampler, estimate_regularity

DIGITS = 60


def cantor_ratio(dimension: float) -> float:
    """log 2 / log(1/ρ) = dimension 的比例 ρ, dimension ∈ (0, 1]"""
    if not 0 < dimension <= 1:
        raise GeometryInputError(f"Cantor dimension must lie in (0, 1], got {dimension}")
    return 2.0 ** (-1.0 / dimension)


def cantor_cdf(x, ratio: float) -> np.ndarray:
    """Cantor 测度的分布函数, 逐层判断落在左段、右段还是空隙"""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    out = np.zeros_like(x)
    active = np.ones_like(x, dtype=bool)
    weight = 1.0
    for _ in range(DIGITS):
        left = active & (x <= ratio)
        right = active & (x >= 1 - ratio)
        gap = active & ~left & ~right
        out = out + np.where(gap | right, 0.5 * weight, 0.0)
        active = left | right
        x = np.where(left, x / ratio, np.where(right, (x - (1 - ratio)) / ratio, x))
        weight *= 0.5
    return out


def cantor_quantile(p, ratio: float) -> np.ndarray:
    """分布函数的广义逆: p 的二进制位决定每一层选左段还是右段"""
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    x = np.zeros_like(p)
    scale = 1.0
    for _ in range(DIGITS):
        p = 2 * p
        bit = p >= 1
        p = np.where(bit, p - 1, p)
        x = x + np.where(bit, (1 - ratio) * scale, 0.0)
        scale *= ratio
    return x


def in_cantor_set(x, ratio: float, levels: int = 20, tol: float = 1e-12) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    ok = (x >= -tol) & (x <= 1 + tol)
    for _ in range(levels):
        left = x <= ratio + tol
        right = x >= 1 - ratio - tol
        ok = ok & (left | right)
        x = np.where(left, x / ratio, (x - (1 - ratio)) / ratio)
        tol = tol / ratio
    return ok


class CantorProductSampler(MeasureSampler):
    """[0,1]^{d-1} × K × {0}^{n-d} 上的乘积测度, K 为维数 γ-d+1 的 Cantor 集

    参数:
    - d (int): 单纯形维数, 支撑维数 γ ∈ (d-1, d]
    - ambient_dim (int): 空间维数 n >= d
    - gamma (float): 测度维数
    - c_mu (float): 正则常数, 省略时由自检估计
    """

    def __init__(self, d: int, ambient_dim: int, gamma: float, c_mu: Optional[float] = None):
        if ambient_dim < d:
            raise GeometryInputError("ambient dimension must be at least d")
        if not d - 1 < gamma <= d:
            raise GeometryInputError(f"gamma must lie in ({d - 1}, {d}], got {gamma}")
        self.d = int(d)
        self.ambient_dim = int(ambient_dim)
        self.gamma = float(gamma)
        self.ratio = cantor_ratio(gamma - d + 1)
        self.support_diam = math.sqrt(d)
        self._c_mu = c_mu

    @property
    def c_mu(self) -> float:
        if self._c_mu is None:
            self._c_mu, _ = estimate_regularity(self, np.random.default_rng(0))
        return self._c_mu

    def on_support(self, points, tol: float = 1e-9) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        flat = points[:, : self.d - 1]
        ok = np.all((flat >= -tol) & (flat <= 1 + tol), axis=1)
        ok &= np.all(np.abs(points[:, self.d:]) <= tol, axis=1)
        return ok & in_cantor_set(points[:, self.d - 1], self.ratio)

    def support_point(self, rng: np.random.Generator) -> np.ndarray:
        point = np.zeros(self.ambient_dim)
        point[: self.d - 1] = rng.uniform(size=self.d - 1)
        point[self.d - 1] = float(cantor_quantile(rng.uniform(), self.ratio))
        return point

    def _intervals(self, center, r):
        low = np.clip(center[: self.d] - r, 0.0, 1.0)
        high = np.clip(center[: self.d] + r, 0.0, 1.0)
        return low, high

    def _draw_box(self, center, r, count, rng):
        low, high = self._intervals(center, r)
        points = np.zeros((count, self.ambient_dim))
        points[:, : self.d - 1] = rng.uniform(low[:-1], high[:-1], size=(count, self.d - 1))
        f_low, f_high = cantor_cdf(low[-1], self.ratio), cantor_cdf(high[-1], self.ratio)
        points[:, self.d - 1] = cantor_quantile(rng.uniform(f_low, f_high, size=count), self.ratio)
        return points

    def box_mass(self, center, r) -> float:
        low, high = self._intervals(center, r)
        flat = float(np.prod(high[:-1] - low[:-1]))
        return flat * float(cantor_cdf(high[-1], self.ratio) - cantor_cdf(low[-1], self.ratio))
