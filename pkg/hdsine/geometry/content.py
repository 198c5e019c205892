from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..exceptions import GeometryInputError, PreconditionError
from ..utils import get_logger

log = get_logger(__name__)

DEFAULT_TOL = 1e-10


def as_vectors(vs, ambient_dim: Optional[int] = None) -> np.ndarray:
    """把输入整理成(k, n)的浮点数组并检查有限性
    参数:
    - vs: 向量序列, 每个向量长度为n
    - ambient_dim: 空输入时使用的空间维数
    """
    arr = np.asarray(vs, dtype=float)
    if arr.size == 0:
        n = ambient_dim if ambient_dim is not None else (arr.shape[-1] if arr.ndim == 2 else 0)
        return np.zeros((0, n))
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise GeometryInputError(f"expected a sequence of vectors, got shape {arr.shape}")
    if ambient_dim is not None and arr.shape[1] != ambient_dim:
        raise GeometryInputError(f"ambient dimension mismatch: {arr.shape[1]} != {ambient_dim}")
    if not np.all(np.isfinite(arr)):
        raise GeometryInputError("vector coordinates must be finite")
    return arr


def as_vector(u, ambient_dim: Optional[int] = None) -> np.ndarray:
    arr = np.asarray(u, dtype=float)
    if arr.ndim != 1:
        raise GeometryInputError(f"expected a single vector, got shape {arr.shape}")
    if ambient_dim is not None and arr.shape[0] != ambient_dim:
        raise GeometryInputError(f"ambient dimension mismatch: {arr.shape[0]} != {ambient_dim}")
    if not np.all(np.isfinite(arr)):
        raise GeometryInputError("vector coordinates must be finite")
    return arr


def gram_matrix(vs) -> np.ndarray:
    """内积矩阵G[i, j] = <v_i, v_j>"""
    arr = as_vectors(vs)
    return arr @ arr.T


def abs_contents(vs: np.ndarray) -> np.ndarray:
    """|M_k|的批量版本, vs形状为(..., k, n), k <= n

    由QR分解中R的对角线乘积得到, 等于sqrt(det(Gram)), 且恒为非负.
    """
    vs = np.asarray(vs, dtype=float)
    k = vs.shape[-2]
    if k == 0:
        return np.ones(vs.shape[:-2])
    r = np.linalg.qr(np.swapaxes(vs, -1, -2), mode="r")
    return np.abs(np.diagonal(r, axis1=-2, axis2=-1)).prod(axis=-1)


def signed_contents(vs: np.ndarray, signed_basis: Optional[np.ndarray] = None) -> np.ndarray:
    """det_Φ的批量版本, vs形状为(..., n, n)"""
    vs = np.asarray(vs, dtype=float)
    if signed_basis is not None:
        vs = vs @ np.asarray(signed_basis, dtype=float).T
    return np.linalg.det(vs)


@dataclass(frozen=True)
class ContentResult:
    """k个向量张成的平行多面体的k维体积
    参数:
    - value (float): 体积, k == n 时带符号
    - k (int): 向量个数
    - signed (bool): 是否带符号
    """
    value: float
    k: int
    signed: bool


def content(vs, signed_basis=None, tol: float = DEFAULT_TOL) -> ContentResult:
    """M_k(v_1, ..., v_k)

    Args:
        vs: k vectors of ambient dimension n, k <= n.
        signed_basis: optional orthonormal basis Φ (rows) used for the signed case k == n.
        tol: orthonormality tolerance for ``signed_basis``.

    Returns:
        ContentResult: signed iff k equals the ambient dimension.
    """
    arr = as_vectors(vs)
    k, n = arr.shape
    if k > n:
        raise GeometryInputError(f"{k} vectors cannot span a {k}-content in dimension {n}")
    if k == n and k > 0:
        if signed_basis is not None:
            phi = as_vectors(signed_basis, ambient_dim=n)
            if phi.shape[0] != n or not np.allclose(phi @ phi.T, np.eye(n), atol=10 * tol * n):
                raise GeometryInputError("signed_basis must be a full orthonormal basis")
            return ContentResult(value=float(signed_contents(arr, phi)), k=k, signed=True)
        return ContentResult(value=float(signed_contents(arr)), k=k, signed=True)
    return ContentResult(value=float(abs_contents(arr)), k=k, signed=False)


def affine_det_identity_check(vs, u, tol: float = DEFAULT_TOL) -> float:
    """det(v_1..v_n) 与 Σ_i det(v_i 换成 u) 之差, u 需在 v 的仿射包内
    参数:
    - vs: n个n维向量
    - u: 仿射组合得到的向量
    """
    arr = as_vectors(vs)
    k, n = arr.shape
    if k != n:
        raise GeometryInputError(f"need exactly {n} vectors in dimension {n}, got {k}")
    u = as_vector(u, ambient_dim=n)
    # 解 [V^T; 1] t = [u; 1]
    system = np.vstack([arr.T, np.ones((1, k))])
    rhs = np.concatenate([u, [1.0]])
    t, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    scale = max(1.0, float(np.abs(arr).max()), float(np.abs(u).max()))
    residual = float(np.linalg.norm(system @ t - rhs))
    if residual > 1e3 * tol * scale:
        raise PreconditionError(f"u is not an affine combination of vs (residual {residual:.3e})")
    replaced = np.repeat(arr[None, :, :], k, axis=0)
    replaced[np.arange(k), np.arange(k)] = u
    lhs = float(np.linalg.det(arr))
    rhs_sum = float(np.linalg.det(replaced).sum())
    return abs(lhs - rhs_sum)


def content_product_form(vs) -> float:
    """|M_{d+1}(v_1..v_{d+1})| = dist(v_{d+1}, span(v_1..v_d)) · M_d(v_1..v_d)"""
    from .frame import orthonormal_frame, distance_to

    arr = as_vectors(vs)
    if arr.shape[0] < 2:
        raise GeometryInputError("need at least two vectors")
    head = arr[:-1]
    frame = orthonormal_frame(head, ambient_dim=arr.shape[1])
    return distance_to(frame, arr[-1]) * float(abs_contents(head))
