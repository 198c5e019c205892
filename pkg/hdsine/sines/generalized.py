from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel

from ..exceptions import DomainError

# |k|·x² 小于该阈值时使用级数
SERIES_THRESHOLD = 1e-8
ZERO_SET_TOL = 1e-12

RealFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class GeneralizedSine:
    """c·s_k(x), 常曲率空间上的广义正弦
    参数:
    - c (float): 幅值
    - k (float): 曲率, k > 0 为 sin(√k x)/√k, k = 0 为 x, k < 0 为 sinh(√-k x)/√-k
    """
    c: float = 1.0
    k: float = 1.0

    def __call__(self, x):
        return eval_sk(self, x)


def eval_sk(f: GeneralizedSine, x):
    x = np.asarray(x, dtype=float)
    k = float(f.k)
    series = x - k * x ** 3 / 6 + k ** 2 * x ** 5 / 120
    if k > 0:
        root = np.sqrt(k)
        closed = np.sin(root * x) / root
    elif k < 0:
        root = np.sqrt(-k)
        closed = np.sinh(root * x) / root
    else:
        closed = x
    out = f.c * np.where(np.abs(k) * x ** 2 < SERIES_THRESHOLD, series, closed)
    return float(out) if out.ndim == 0 else out


def functional_equation_residual(f: RealFunction, alpha, beta, delta):
    """|f(α+β) - (f(α+δ) f(β) + f(δ-β) f(α)) / f(δ)|

    参数:
    - f: 可以向量化调用的实函数
    - alpha, beta, delta: 标量或同形状数组, |f(δ)| 需大于 1e-12
    """
    alpha, beta, delta = (np.asarray(v, dtype=float) for v in (alpha, beta, delta))
    f_delta = np.asarray(f(delta), dtype=float)
    if np.any(np.abs(f_delta) <= ZERO_SET_TOL):
        raise DomainError("delta lies in the zero set of f")
    rhs = (np.asarray(f(alpha + delta)) * np.asarray(f(beta))
           + np.asarray(f(delta - beta)) * np.asarray(f(alpha))) / f_delta
    out = np.abs(np.asarray(f(alpha + beta)) - rhs)
    return float(out) if out.ndim == 0 else out


def carmichael_residual(f: RealFunction, alpha, beta):
    """|f(α+β)·f(β-α) - (f(β)² - f(α)²)|"""
    alpha, beta = np.asarray(alpha, dtype=float), np.asarray(beta, dtype=float)
    out = np.abs(np.asarray(f(alpha + beta)) * np.asarray(f(beta - alpha))
                 - (np.asarray(f(beta)) ** 2 - np.asarray(f(alpha)) ** 2))
    return float(out) if out.ndim == 0 else out


def cube_grid(low: float, high: float, num: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """[low, high]³ 上的均匀网格, 返回展平的 (α, β, δ)"""
    axis = np.linspace(low, high, num)
    a, b, c = np.meshgrid(axis, axis, axis, indexing="ij")
    return a.ravel(), b.ravel(), c.ravel()


class MembershipResult(BaseModel):
    member: bool
    max_residual: float
    max_scaled_residual: float
    admissible_points: int


def membership_test(f: RealFunction,
                    grid: Union[Tuple[np.ndarray, np.ndarray, np.ndarray], Iterable],
                    tol: float = 1e-9) -> MembershipResult:
    """在网格上检验 f 是否满足函数方程

    残差按 max(1, |f(α+β)|) 缩放, f(δ) 落在零集上的网格点被剔除.
    """
    alpha, beta, delta = (np.asarray(v, dtype=float).ravel() for v in grid)
    if alpha.size == 0:
        raise DomainError("empty parameter grid")
    admissible = np.abs(np.asarray(f(delta), dtype=float)) > ZERO_SET_TOL
    if not np.any(admissible):
        raise DomainError("no admissible delta: f vanishes on the whole grid")
    alpha, beta, delta = alpha[admissible], beta[admissible], delta[admissible]
    residual = np.atleast_1d(functional_equation_residual(f, alpha, beta, delta))
    scale = np.maximum(1.0, np.abs(np.asarray(f(alpha + beta), dtype=float)))
    scaled = residual / scale
    max_scaled = float(scaled.max())
    return MembershipResult(member=bool(max_scaled <= tol),
                            max_residual=float(residual.max()),
                            max_scaled_residual=max_scaled,
                            admissible_points=int(alpha.size))


def named_function(name: str, c: float = 1.0, k: float = 1.0) -> RealFunction:
    """命令行里可以选择的函数族"""
    if name == "sk":
        return GeneralizedSine(c=c, k=k)
    if name == "square":
        return lambda x: np.asarray(x, dtype=float) ** 2
    if name == "cos":
        return np.cos
    if name == "perturbed":
        return lambda x: np.asarray(x, dtype=float) + 0.01 * np.asarray(x, dtype=float) ** 2
    raise DomainError(f"unknown function family {name}")
