"""d+1 维空间里的精确恒等式: ũ 与 λ 的构造, 行列式分解, P_i 与 Q_i 系数"""
from dataclasses import dataclass
from typing import List

import numpy as np

from ..exceptions import GeometryInputError, PreconditionError
from ..geometry import (DEFAULT_TOL, abs_contents, as_vector, as_vectors, distance_to,
                        orthonormal_frame)
from ..utils import get_logger
from .functions import face_index, hyper_values, polar_values, substituted

log = get_logger(__name__)

# 锥边界上允许的负 λ
LAMBDA_CLAMP = 1e-12


@dataclass(frozen=True)
class IdentityContext:
    """恒等式的输入
    参数:
    - vs (np.ndarray): 空间的一组基, (d+1, d+1)
    - u (np.ndarray): Cpoly(vs) 中的向量
    - betas (np.ndarray): d+1 个正的缩放系数
    - lambdas (np.ndarray): u = Σ λ_i β_i v_i 的系数
    - u_tilde (np.ndarray): u / Σ λ_i
    """
    vs: np.ndarray
    u: np.ndarray
    betas: np.ndarray
    lambdas: np.ndarray
    u_tilde: np.ndarray

    @property
    def d(self) -> int:
        return self.vs.shape[0] - 1

    @property
    def scaled(self) -> np.ndarray:
        return self.betas[:, None] * self.vs


def _check_basis(vs: np.ndarray, tol: float) -> None:
    k, n = vs.shape
    if k != n:
        raise GeometryInputError(f"identities live in dimension d+1: got {k} vectors in R^{n}")
    if orthonormal_frame(vs, tol=tol).rank < k:
        raise GeometryInputError("vs must be a basis of the ambient space")


def build_context(vs, u, betas=None, tol: float = DEFAULT_TOL) -> IdentityContext:
    """解 Σ λ_i β_i v_i = u 并构造 ũ

    Args:
        vs: d+1 vectors forming a basis of R^{d+1}.
        u: vector in the closed polyhedral cone of vs, not parallel to any v_i.
        betas: positive scalings, all ones when omitted.
        tol: rank and parallelism tolerance.
    """
    vs = as_vectors(vs)
    _check_basis(vs, tol)
    k = vs.shape[0]
    u = as_vector(u, ambient_dim=k)
    betas = np.ones(k) if betas is None else np.asarray(betas, dtype=float).reshape(-1)
    if betas.shape != (k,) or np.any(~np.isfinite(betas)) or np.any(betas <= 0):
        raise GeometryInputError("betas must be d+1 positive reals")
    if not np.any(u):
        raise PreconditionError("u must be nonzero")
    scaled = betas[:, None] * vs
    lambdas = np.linalg.solve(scaled.T, u)
    floor = -LAMBDA_CLAMP * max(1.0, float(np.abs(lambdas).sum()))
    if np.any(lambdas < floor):
        raise PreconditionError(f"u lies outside the cone of vs (lambda = {lambdas})")
    lambdas = np.clip(lambdas, 0.0, None)
    norm_u = float(np.linalg.norm(u))
    for i, v in enumerate(vs):
        line = orthonormal_frame(v[None, :], tol=tol)
        if distance_to(line, u) <= tol * norm_u:
            raise PreconditionError(f"u is parallel to v_{i + 1}")
    return IdentityContext(vs=vs, u=u, betas=betas, lambdas=lambdas,
                           u_tilde=u / lambdas.sum())


def sign_flip_reduction(vs, u) -> np.ndarray:
    """v̂_i = sign(λ_i)·v_i, 之后 u 落在 Cpoly(v̂) 里"""
    vs = as_vectors(vs)
    u = as_vector(u, ambient_dim=vs.shape[1])
    lambdas = np.linalg.solve(vs.T, u)
    signs = np.where(lambdas < 0, -1.0, 1.0)
    return signs[:, None] * vs


def det_affine_split(ctx: IdentityContext) -> float:
    """|det(β_i v_i) - Σ_i det(第 i 个换成 ũ)|"""
    scaled = ctx.scaled
    lhs = float(np.linalg.det(scaled))
    rhs = float(np.linalg.det(substituted(scaled, ctx.u_tilde)).sum())
    return abs(lhs - rhs)


@dataclass(frozen=True)
class PCoefficients:
    norm_ratio: np.ndarray
    sine_ratio: np.ndarray
    identity_residual: float
    fallback: List[int]

    @property
    def values(self) -> np.ndarray:
        return self.norm_ratio


def _pair_sine(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """|p_1 sin_0(a, b)|, 批量"""
    return polar_values(np.stack([a, b], axis=-2))


def p_coefficients(ctx: IdentityContext, tol: float = DEFAULT_TOL) -> PCoefficients:
    """P_i 的两种算法, 以及 p_d sin_0(v) = Σ P_i p_d sin_0(第 i 个换成 u) 的残差"""
    scaled = ctx.scaled
    ut = ctx.u_tilde
    norms = np.linalg.norm(scaled, axis=1)
    norm_ratio = np.linalg.norm(ut) / norms
    sine_ratio = np.full(norm_ratio.shape, np.nan)
    fallback = []
    for i, bv in enumerate(scaled):
        if np.linalg.norm(ut - bv) <= tol * norms[i]:
            log.warning(f"sine-ratio path undefined at index {i}: u_tilde coincides with beta_i v_i")
            fallback.append(i)
            sine_ratio[i] = norm_ratio[i]
            continue
        sine_ratio[i] = float(_pair_sine(-bv, ut - bv)) / float(_pair_sine(ut, bv - ut))
    lhs = float(polar_values(ctx.vs, signed=True))
    terms = polar_values(substituted(ctx.vs, ctx.u), signed=True)
    residual = abs(lhs - float(norm_ratio @ terms))
    return PCoefficients(norm_ratio=norm_ratio, sine_ratio=sine_ratio,
                         identity_residual=residual, fallback=fallback)


def uniform_betas(vs) -> np.ndarray:
    """β_i = 1/‖v_i‖, 此时所有 P_i 都等于 ‖ũ‖"""
    vs = as_vectors(vs)
    norms = np.linalg.norm(vs, axis=1)
    if np.any(norms == 0):
        raise GeometryInputError("zero vector has no uniform scaling")
    return 1.0 / norms


def polar_uniform_residual(vs, u) -> float:
    """|p_d sin_0(v) - ‖ũ‖ Σ_i p_d sin_0(第 i 个换成 u)|, β 取 1/‖v_i‖"""
    ctx = build_context(vs, u, uniform_betas(vs))
    lhs = float(polar_values(ctx.vs, signed=True))
    terms = polar_values(substituted(ctx.vs, ctx.u), signed=True)
    return abs(lhs - float(np.linalg.norm(ctx.u_tilde)) * float(terms.sum()))


@dataclass(frozen=True)
class QCoefficients:
    content_ratio: np.ndarray
    distance_ratio: np.ndarray
    elevation_ratio: np.ndarray
    apex_ratio: np.ndarray
    identity_residual: float

    @property
    def values(self) -> np.ndarray:
        return self.content_ratio

    def max_disagreement(self, include_apex: bool = True) -> float:
        paths = [self.distance_ratio, self.elevation_ratio]
        if include_apex:
            paths.append(self.apex_ratio)
        paths = np.vstack(paths)
        return float(np.nanmax(np.abs(paths - self.content_ratio) / np.abs(self.content_ratio)))


def _pair_frames(vs: np.ndarray, i: int, j: int, tol: float):
    n = vs.shape[1]
    return orthonormal_frame(np.delete(vs, [i, j], axis=0), tol=tol, ambient_dim=n)


def face_contents(vs) -> np.ndarray:
    """第 i 个元素为去掉 v_i 后 d 个向量的 content"""
    vs = as_vectors(vs)
    return abs_contents(vs[face_index(vs.shape[0])])


def q_coefficients(ctx: IdentityContext, tol: float = DEFAULT_TOL) -> QCoefficients:
    """Q_i 的四种算法与 g_d sin_0(v) = Σ Q_i g_d sin_0(第 i 个换成 u) 的残差

    - content_ratio: Π_{j≠i} (M_d(B去掉j, 第i个换成ũ) / M_d(B去掉j))^{1/d}
    - distance_ratio: Π_{j≠i} (dist(ũ, L_ij) / dist(β_i v_i, L_ij))^{1/d}
    - elevation_ratio: P_i · Π_{j≠i} (sin θ(ũ, L_ij) / sin θ(β_i v_i, L_ij))^{1/d}
    - apex_ratio: Π_{j≠i} g_d sin_{β_i v_i}(第j个换成ũ, 第i个换成0) / g_d sin_ũ(第j个换成0)
    其中 B = {β_k v_k}, L_ij = span(S∖{v_i, v_j}).
    """
    scaled = ctx.scaled
    ut = ctx.u_tilde
    k = scaled.shape[0]
    d = k - 1
    faces = face_contents(scaled)
    edge_products = np.linalg.norm(scaled, axis=1)[face_index(k)].prod(axis=1)
    if np.any(faces <= tol * edge_products):
        raise GeometryInputError("degenerate sub-face in the scaled system")
    replaced = substituted(scaled, ut)  # replaced[i] 第 i 个换成 ũ
    content_ratio = np.ones(k)
    distance_ratio = np.ones(k)
    elevation_ratio = np.linalg.norm(ut) / np.linalg.norm(scaled, axis=1)
    apex_ratio = np.ones(k)
    zero = np.zeros(scaled.shape[1])
    for i in range(k):
        for j in range(k):
            if j == i:
                continue
            face = abs_contents(np.delete(replaced[i], j, axis=0))
            content_ratio[i] *= (face / faces[j]) ** (1.0 / d)

            L = _pair_frames(ctx.vs, i, j, tol)
            num = distance_to(L, ut)
            den = distance_to(L, scaled[i])
            distance_ratio[i] *= (num / den) ** (1.0 / d)
            elev_num = num / np.linalg.norm(ut)
            elev_den = den / np.linalg.norm(scaled[i])
            elevation_ratio[i] *= (elev_num / elev_den) ** (1.0 / d)

            upper = scaled.copy()
            upper[j] = ut
            upper[i] = zero
            lower = scaled.copy()
            lower[j] = zero
            top = float(hyper_values(upper - scaled[i], signed=True))
            bottom = float(hyper_values(lower - ut, signed=True))
            apex_ratio[i] = apex_ratio[i] * top / bottom if bottom != 0 else np.nan
    lhs = float(hyper_values(ctx.vs, signed=True))
    terms = hyper_values(substituted(ctx.vs, ctx.u), signed=True)
    residual = abs(lhs - float(content_ratio @ terms))
    return QCoefficients(content_ratio=content_ratio, distance_ratio=distance_ratio,
                         elevation_ratio=elevation_ratio, apex_ratio=apex_ratio,
                         identity_residual=residual)


def hypersine_beta_choice(vs, tol: float = DEFAULT_TOL) -> np.ndarray:
    """β_i = M_d(去掉 v_i 的面), 缩放后所有过 0 的 d 维面体积相同"""
    vs = as_vectors(vs)
    if orthonormal_frame(vs, tol=tol).rank < vs.shape[0]:
        raise GeometryInputError("vs must be linearly independent")
    return face_contents(vs)


def equal_distance_residual(vs, betas, tol: float = DEFAULT_TOL) -> float:
    """max_{i≠k} |dist(β_k v_k, L_ik) - dist(β_i v_i, L_ik)| / dist(β_i v_i, L_ik)"""
    vs = as_vectors(vs)
    scaled = np.asarray(betas, dtype=float)[:, None] * vs
    k = vs.shape[0]
    worst = 0.0
    for i in range(k):
        for j in range(i + 1, k):
            L = _pair_frames(vs, i, j, tol)
            a = distance_to(L, scaled[i])
            b = distance_to(L, scaled[j])
            worst = max(worst, abs(a - b) / max(a, b))
    return worst


def sine_addition_residual(alpha, beta, delta):
    """|sin(α+β) - (sin(α+δ) sin β + sin(δ-β) sin α) / sin δ|"""
    alpha, beta, delta = (np.asarray(x, dtype=float) for x in (alpha, beta, delta))
    rhs = (np.sin(alpha + delta) * np.sin(beta) + np.sin(delta - beta) * np.sin(alpha)) / np.sin(delta)
    return np.abs(np.sin(alpha + beta) - rhs)


def two_term_residual(alpha, beta):
    """|sin(α+β) - sin((α+β)/2) / sin((α-β)/2) · (sin α - sin β)|, α ≠ β"""
    alpha, beta = np.asarray(alpha, dtype=float), np.asarray(beta, dtype=float)
    rhs = np.sin((alpha + beta) / 2) / np.sin((alpha - beta) / 2) * (np.sin(alpha) - np.sin(beta))
    return np.abs(np.sin(alpha + beta) - rhs)


def identity_beta(kind: str, vs) -> np.ndarray:
    """恒等式路径使用的 β: polar 取 1/‖v_i‖, hyper 取面的 content"""
    if kind == "polar":
        return uniform_betas(vs)
    if kind == "hyper":
        return hypersine_beta_choice(vs)
    raise GeometryInputError(f"unknown sine kind {kind}")
