from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..exceptions import GeometryInputError
from .content import DEFAULT_TOL, as_vector, as_vectors

# 交集的奇异值在舍入误差量级, 用放大的阈值判断
_INTERSECTION_FACTOR = 1e3


@dataclass(frozen=True)
class SubspaceFrame:
    """线性或仿射子空间的正交归一基
    参数:
    - origin (np.ndarray): 原点, 线性子空间为零向量
    - basis (np.ndarray): (rank, n)的正交归一基
    - tolerance (float): 正交化时使用的容差
    """
    origin: np.ndarray
    basis: np.ndarray
    tolerance: float = DEFAULT_TOL

    @property
    def rank(self) -> int:
        return int(self.basis.shape[0])

    @property
    def ambient_dim(self) -> int:
        return int(self.origin.shape[0])

    @property
    def is_linear(self) -> bool:
        return not np.any(self.origin)


def orthonormal_frame(vs,
                      origin=None,
                      tol: float = DEFAULT_TOL,
                      ambient_dim: Optional[int] = None) -> SubspaceFrame:
    """修正的Gram-Schmidt正交化, 每个向量做两遍投影

    Args:
        vs: spanning vectors.
        origin: anchor of an affine frame; the frame spans {v_i - origin}.
        tol: residuals below tol * (largest input norm) are dropped.
        ambient_dim: required when vs is empty and no origin is given.

    Returns:
        SubspaceFrame: frame whose rank is the numerical rank of the input.
    """
    if tol <= 0:
        raise GeometryInputError("tol must be positive")
    if origin is not None:
        origin = as_vector(origin)
        ambient_dim = origin.shape[0]
    arr = as_vectors(vs, ambient_dim=ambient_dim)
    n = arr.shape[1]
    if origin is None:
        origin = np.zeros(n)
    arr = arr - origin
    norms = np.linalg.norm(arr, axis=1)
    scale = float(norms.max()) if norms.size else 0.0
    basis = []
    if scale > 0:
        for v in arr:
            w = v.copy()
            for _ in range(2):
                for b in basis:
                    w -= (w @ b) * b
            norm = np.linalg.norm(w)
            if norm > tol * scale:
                basis.append(w / norm)
    basis = np.array(basis).reshape(len(basis), n)
    return SubspaceFrame(origin=origin, basis=basis, tolerance=tol)


def project(frame: SubspaceFrame, u) -> np.ndarray:
    """正交投影, u可以是(..., n)的批量输入"""
    u = np.asarray(u, dtype=float)
    if u.shape[-1] != frame.ambient_dim:
        raise GeometryInputError(f"ambient dimension mismatch: {u.shape[-1]} != {frame.ambient_dim}")
    rel = u - frame.origin
    return frame.origin + (rel @ frame.basis.T) @ frame.basis


def distance_to(frame: SubspaceFrame, u):
    """dist(u, L) = ‖u - P(u)‖"""
    dist = np.linalg.norm(np.asarray(u, dtype=float) - project(frame, u), axis=-1)
    return float(dist) if np.ndim(dist) == 0 else dist


def contains(frame: SubspaceFrame, u, tol: Optional[float] = None) -> bool:
    tol = frame.tolerance if tol is None else tol
    u = as_vector(u, ambient_dim=frame.ambient_dim)
    scale = max(1.0, float(np.linalg.norm(u - frame.origin)))
    return distance_to(frame, u) <= tol * scale * 10


def intersect_frames(W: SubspaceFrame, V: SubspaceFrame, tol: Optional[float] = None) -> SubspaceFrame:
    """两个线性子空间的交

    由 [B_W; -B_V]^T 的零空间得到系数 (a, b), 交集由 a·B_W 张成.
    """
    if W.ambient_dim != V.ambient_dim:
        raise GeometryInputError("frames live in different ambient spaces")
    if not (W.is_linear and V.is_linear):
        raise GeometryInputError("intersections are only defined here for linear frames")
    tol = max(W.tolerance, V.tolerance) if tol is None else tol
    n = W.ambient_dim
    r1, r2 = W.rank, V.rank
    if r1 == 0 or r2 == 0:
        return orthonormal_frame([], tol=tol, ambient_dim=n)
    stacked = np.vstack([W.basis, -V.basis]).T
    _, s, vt = np.linalg.svd(stacked, full_matrices=True)
    singular = np.zeros(r1 + r2)
    singular[: s.shape[0]] = s
    null = vt[singular <= _INTERSECTION_FACTOR * tol]
    if null.shape[0] == 0:
        return orthonormal_frame([], tol=tol, ambient_dim=n)
    return orthonormal_frame(null[:, :r1] @ W.basis, tol=tol, ambient_dim=n)


def join_frames(W: SubspaceFrame, V: SubspaceFrame) -> SubspaceFrame:
    return orthonormal_frame(np.vstack([W.basis, V.basis]),
                             tol=max(W.tolerance, V.tolerance),
                             ambient_dim=W.ambient_dim)


def complement_frame(frame: SubspaceFrame) -> SubspaceFrame:
    """线性子空间的正交补 V⊥"""
    n = frame.ambient_dim
    if frame.rank == 0:
        return SubspaceFrame(origin=np.zeros(n), basis=np.eye(n), tolerance=frame.tolerance)
    _, _, vt = np.linalg.svd(frame.basis, full_matrices=True)
    return SubspaceFrame(origin=np.zeros(n), basis=vt[frame.rank:].copy(), tolerance=frame.tolerance)
