from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from ..exceptions import ConsistencyError, GeometryInputError, PreconditionError
from ..geometry import (DEFAULT_TOL, abs_contents, as_vector, as_vectors, dihedral_sine,
                        elevation_sine, orthonormal_frame, signed_contents)

# 超过 1 这么多时视为数值错误而不是舍入
OVERSHOOT = 1e-9


class SineKind(str, Enum):
    polar = "polar"
    hyper = "hyper"


@dataclass(frozen=True)
class PointConfig:
    """正弦函数的输入: 顶点w以及有序的d+1个向量
    参数:
    - w (np.ndarray): 顶点
    - vs (np.ndarray): (d+1, n)的向量组, n >= d+1
    """
    w: np.ndarray
    vs: np.ndarray

    def __post_init__(self):
        vs = as_vectors(self.vs)
        w = as_vector(self.w, ambient_dim=vs.shape[1])
        if vs.shape[0] < 2:
            raise GeometryInputError("a point configuration needs d+1 >= 2 vectors")
        if vs.shape[1] < vs.shape[0]:
            raise GeometryInputError(
                f"ambient dimension {vs.shape[1]} is smaller than d+1 = {vs.shape[0]}")
        object.__setattr__(self, "vs", vs)
        object.__setattr__(self, "w", w)

    @classmethod
    def at_origin(cls, vs) -> "PointConfig":
        vs = as_vectors(vs)
        return cls(w=np.zeros(vs.shape[1]), vs=vs)

    @property
    def d(self) -> int:
        return self.vs.shape[0] - 1

    @property
    def n(self) -> int:
        return self.vs.shape[1]

    @property
    def shifted(self) -> np.ndarray:
        return self.vs - self.w

    def with_slot(self, i: int, u) -> "PointConfig":
        vs = self.vs.copy()
        vs[i] = as_vector(u, ambient_dim=self.n)
        return PointConfig(w=self.w, vs=vs)


@dataclass(frozen=True)
class SineValue:
    value: float
    signed: bool


def _clamp(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if np.any(np.abs(values) > 1 + OVERSHOOT):
        raise ConsistencyError(f"sine value {np.abs(values).max():.17g} exceeds one")
    return np.clip(values, -1.0, 1.0)


def face_index(k: int) -> np.ndarray:
    """第 i 行是去掉第 i 个向量后剩下的下标"""
    return np.array([[j for j in range(k) if j != i] for i in range(k)], dtype=int).reshape(k, k - 1)


def substituted(vs: np.ndarray, u: np.ndarray) -> np.ndarray:
    """(..., k, n) 与 (..., n) -> (..., k, k, n), 第 i 组把第 i 个向量换成 u"""
    vs = np.asarray(vs, dtype=float)
    u = np.asarray(u, dtype=float)
    k = vs.shape[-2]
    out = np.repeat(vs[..., None, :, :], k, axis=-3).copy()
    idx = np.arange(k)
    out[..., idx, idx, :] = u[..., None, :]
    return out


def polar_values(vs, signed: bool = False) -> np.ndarray:
    """p_d sin_0 的批量版本, vs 形状 (..., d+1, n)"""
    vs = np.asarray(vs, dtype=float)
    norms = np.linalg.norm(vs, axis=-1)
    numer = signed_contents(vs) if signed else abs_contents(vs)
    denom = norms.prod(axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(denom > 0, numer / np.where(denom > 0, denom, 1.0), 0.0)
    return _clamp(out)


def hyper_values(vs, signed: bool = False, tol: float = DEFAULT_TOL) -> np.ndarray:
    """g_d sin_0 的批量版本, vs 形状 (..., d+1, n)

    某个d维面的体积与其边长乘积之比小于tol时返回0.
    """
    vs = np.asarray(vs, dtype=float)
    k = vs.shape[-2]
    d = k - 1
    idx = face_index(k)
    norms = np.linalg.norm(vs, axis=-1)
    faces = abs_contents(vs[..., idx, :])
    edge_products = norms[..., idx].prod(axis=-1)
    degenerate = np.any(faces <= tol * edge_products, axis=-1)
    numer = signed_contents(vs) if signed else abs_contents(vs)
    safe_faces = np.where(degenerate[..., None], 1.0, faces)
    denom = np.prod(safe_faces ** (1.0 / d), axis=-1)
    out = np.where(degenerate, 0.0, numer / denom)
    return _clamp(out)


def sine_values(kind, vs, signed: bool = False, tol: float = DEFAULT_TOL) -> np.ndarray:
    kind = SineKind(kind)
    if kind is SineKind.polar:
        return polar_values(vs, signed=signed)
    return hyper_values(vs, signed=signed, tol=tol)


def _resolve_signed(cfg: PointConfig, signed: Optional[bool]) -> bool:
    square = cfg.n == cfg.d + 1
    if signed is None:
        return square
    if signed and not square:
        raise GeometryInputError("signed sines are only defined when n == d+1")
    return bool(signed)


def polar_sine(cfg: PointConfig, signed: Optional[bool] = None) -> SineValue:
    """p_d sin_w(v_1, ..., v_{d+1}) = M_{d+1}(v_i - w) / Π‖v_i - w‖"""
    signed = _resolve_signed(cfg, signed)
    return SineValue(value=float(polar_values(cfg.shifted, signed=signed)), signed=signed)


def hypersine(cfg: PointConfig, signed: Optional[bool] = None, tol: float = DEFAULT_TOL) -> SineValue:
    """g_d sin_w(v_1, ..., v_{d+1}) = M_{d+1} / (Π_j M_d(去掉v_j的面))^{1/d}"""
    signed = _resolve_signed(cfg, signed)
    return SineValue(value=float(hyper_values(cfg.shifted, signed=signed, tol=tol)), signed=signed)


def sine(kind, cfg: PointConfig, signed: Optional[bool] = None) -> SineValue:
    if SineKind(kind) is SineKind.polar:
        return polar_sine(cfg, signed=signed)
    return hypersine(cfg, signed=signed)


def _polar_product(vs: np.ndarray) -> float:
    if vs.shape[0] == 1:
        return 1.0 if np.any(vs[0]) else 0.0
    head = vs[:-1]
    frame = orthonormal_frame(head, ambient_dim=vs.shape[1])
    if frame.rank == 0:
        return 0.0
    return elevation_sine(vs[-1], frame) * _polar_product(head)


def polar_sine_product_form(cfg: PointConfig) -> float:
    """|p_d sin_0| = sin θ(v_{d+1}, span(v_1..v_d)) · |p_{d-1} sin_0(v_1..v_d)|"""
    if cfg.d < 2:
        raise GeometryInputError("the product form needs d >= 2")
    return _polar_product(cfg.shifted)


def _hyper_product(vs: np.ndarray) -> float:
    k, n = vs.shape
    d = k - 1
    if d == 1:
        return elevation_sine(vs[1], orthonormal_frame(vs[:1], ambient_dim=n))
    W = orthonormal_frame(vs[:-1], ambient_dim=n)
    dihedral = 1.0
    for i in range(d):
        V = orthonormal_frame(np.delete(vs, i, axis=0), ambient_dim=n)
        dihedral *= dihedral_sine(W, V, witness=vs[i])
    return (dihedral * _hyper_product(vs[:-1]) ** (d - 1)) ** (1.0 / d)


def hypersine_product_form(cfg: PointConfig) -> float:
    """|g_d sin_0|^d = Π_{i<=d} sin α(span(S∖v_{d+1}), span(S∖v_i)) · |g_{d-1} sin_0(v_1..v_d)|^{d-1}"""
    if cfg.d < 2:
        raise GeometryInputError("the product form needs d >= 2")
    vs = cfg.shifted
    if orthonormal_frame(vs).rank < vs.shape[0]:
        raise PreconditionError("dihedral angles are undefined for dependent vectors")
    return _hyper_product(vs)


def law_of_sines_ratio(cfg: PointConfig, permutation: Optional[Sequence[int]] = None) -> float:
    """|g_d sin_u(其余顶点)| / M_d(对面)^{1/d}

    顶点按 (w, v_1, ..., v_{d+1}) 编号, permutation[0] 是作为顶点的 u,
    对面由其余 d+1 个顶点的差向量张成. 返回值与 permutation 无关.
    """
    points = np.vstack([cfg.w[None, :], cfg.vs])
    k = points.shape[0]
    permutation = list(range(k)) if permutation is None else [int(p) for p in permutation]
    if sorted(permutation) != list(range(k)):
        raise GeometryInputError(f"permutation must reorder all {k} vertices")
    points = points[permutation]
    apex, rest = points[0], points[1:]
    if orthonormal_frame(rest - apex).rank < rest.shape[0]:
        raise PreconditionError("the simplex is degenerate")
    d = cfg.d
    value = float(hyper_values(rest - apex, signed=False))
    opposite = float(abs_contents(rest[:-1] - rest[-1]))
    return value / opposite ** (1.0 / d)
