from abc import ABC, abstractmethod
from typing import Optional, Sequence, Tuple

import numpy as np

from ..exceptions import GeometryInputError
from ..utils import get_logger

log = get_logger(__name__)


class MeasureSampler(ABC):
    """γ 维 Ahlfors 正则测度的采样模型

    子类需要给出:
    - gamma: 维数 γ
    - c_mu: 正则常数 C_μ, 精确值或估计值
    - support_diam: 支撑的直径, 无界时为 np.inf
    - draw: 按 μ 限制在 B(center, r) 上的归一化分布采样
    - ball_mass: μ(B(center, r)) 及其标准误差
    """

    gamma: float
    ambient_dim: int
    support_diam: float

    @property
    @abstractmethod
    def c_mu(self) -> float:
        ...

    @abstractmethod
    def on_support(self, points, tol: float = 1e-9) -> np.ndarray:
        ...

    @abstractmethod
    def support_point(self, rng: np.random.Generator) -> np.ndarray:
        ...

    @abstractmethod
    def _draw_box(self, center: np.ndarray, r: float, count: int, rng: np.random.Generator) -> np.ndarray:
        """μ 限制在以 center 为中心、边长 2r 的盒子上的采样"""

    @abstractmethod
    def box_mass(self, center: np.ndarray, r: float) -> float:
        ...

    def _check_ball(self, center, r: float) -> np.ndarray:
        center = np.asarray(center, dtype=float)
        if center.shape != (self.ambient_dim,):
            raise GeometryInputError(f"center must be a vector of dimension {self.ambient_dim}")
        if not bool(np.all(self.on_support(center[None, :]))):
            raise GeometryInputError("center must lie on the support of the measure")
        if not 0 < r <= self.support_diam:
            raise GeometryInputError(f"radius must lie in (0, {self.support_diam}], got {r}")
        return center

    def draw(self, center, r: float, count: int, rng: np.random.Generator) -> np.ndarray:
        """盒子上精确采样后按球拒绝, 得到 μ 限制在 B(center, r) 上的样本"""
        center = self._check_ball(center, r)
        chunks, total = [], 0
        batch = max(64, 2 * count)
        while total < count:
            candidates = self._draw_box(center, r, batch, rng)
            inside = candidates[np.linalg.norm(candidates - center, axis=1) <= r]
            chunks.append(inside)
            total += inside.shape[0]
        return np.concatenate(chunks)[:count]

    def ball_mass(self, center, r: float, rng: Optional[np.random.Generator] = None,
                  samples: int = 20000) -> Tuple[float, float]:
        """μ̂(B(center, r)) = μ(盒子)·(盒子样本落在球内的比例), 返回 (估计值, 标准误差)"""
        center = self._check_ball(center, r)
        rng = np.random.default_rng(0) if rng is None else rng
        box = self.box_mass(center, r)
        points = self._draw_box(center, r, samples, rng)
        p = float(np.mean(np.linalg.norm(points - center, axis=1) <= r))
        return box * p, box * np.sqrt(p * (1 - p) / samples)


def estimate_regularity(sampler: MeasureSampler,
                        rng: np.random.Generator,
                        points: int = 8,
                        radii: Optional[Sequence[float]] = None,
                        samples: int = 4000) -> Tuple[float, np.ndarray]:
    """自检: μ̂(B(x, r)) / r^γ 的范围, 返回最小的 C_μ' 使比值落在 [1/C_μ', C_μ'] 内"""
    if radii is None:
        top = min(1.0, sampler.support_diam)
        radii = np.geomspace(top / 1000, top, 7)
    ratios = []
    for _ in range(points):
        x = sampler.support_point(rng)
        for r in radii:
            mass, _ = sampler.ball_mass(x, float(r), rng=rng, samples=samples)
            ratios.append(mass / float(r) ** sampler.gamma)
    ratios = np.array(ratios)
    constant = float(max(ratios.max(), 1.0 / ratios.min(), 1.0))
    log.info(f"regularity self-test: ratios in [{ratios.min():.4f}, {ratios.max():.4f}], C_mu' = {constant:.4f}")
    return constant, ratios
