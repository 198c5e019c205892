from typing import Tuple

import numpy as np

from ..exceptions import GeometryInputError
from .content import as_vector
from .frame import SubspaceFrame, contains, distance_to, intersect_frames


def _check_linear(W: SubspaceFrame) -> None:
    if W.rank < 1:
        raise GeometryInputError("the subspace must be nontrivial")
    if not W.is_linear:
        raise GeometryInputError("angles are measured against linear subspaces")


def elevation_sine(u, W: SubspaceFrame) -> float:
    """sin θ(u, W) = dist(u, W) / ‖u‖, u = 0 时取 0"""
    _check_linear(W)
    u = as_vector(u, ambient_dim=W.ambient_dim)
    norm = float(np.linalg.norm(u))
    if norm == 0:
        return 0.0
    return float(np.clip(distance_to(W, u) / norm, 0.0, 1.0))


def elevation_angle(u, W: SubspaceFrame) -> float:
    """u 与 W 中非零向量的最小夹角, 取值 [0, π/2]"""
    return float(np.arcsin(elevation_sine(u, W)))


def max_elevation(v1, v2, V: SubspaceFrame) -> float:
    return max(elevation_angle(v1, V), elevation_angle(v2, V))


def _check_dihedral(W: SubspaceFrame, V: SubspaceFrame) -> SubspaceFrame:
    _check_linear(W)
    _check_linear(V)
    if W.rank != V.rank:
        raise GeometryInputError(f"dihedral angles need equal dimensions, got {W.rank} and {V.rank}")
    meet = intersect_frames(W, V)
    if meet.rank != W.rank - 1:
        raise GeometryInputError(
            f"subspaces must meet in codimension one, intersection has rank {meet.rank}")
    return meet


def dihedral_sine(W: SubspaceFrame, V: SubspaceFrame, witness) -> float:
    """sin α(W, V) = dist(w, V) / dist(w, W∩V), w ∈ W∖V

    参数:
    - W, V: 维数相同, 交集维数少一的线性子空间
    - witness: W 中不属于 V 的向量
    """
    meet = _check_dihedral(W, V)
    w = as_vector(witness, ambient_dim=W.ambient_dim)
    if not contains(W, w):
        raise GeometryInputError("witness must lie in W")
    if contains(V, w):
        raise GeometryInputError("witness must lie outside V")
    return float(np.clip(distance_to(V, w) / distance_to(meet, w), 0.0, 1.0))


def dihedral_witness(W: SubspaceFrame, V: SubspaceFrame) -> np.ndarray:
    """W 的基向量中离 V 最远的一个"""
    _check_dihedral(W, V)
    distances = distance_to(V, W.basis)
    return W.basis[int(np.argmax(distances))].copy()


def scaled_sine_bounds(theta, c) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """返回 (c·sin θ, sin(cθ), (π/2)·c·sin θ), θ ∈ [0, π/2], c ∈ [0, 1] 时依次不减"""
    theta = np.asarray(theta, dtype=float)
    c = np.asarray(c, dtype=float)
    return c * np.sin(theta), np.sin(c * theta), np.pi / 2 * c * np.sin(theta)
