import math
from functools import partial
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, conint, validator

from ..data import RadiusRecord, TubeBoundRecord
from ..exceptions import GeometryInputError, ParameterError
from ..geometry import (Cone, SubspaceFrame, Tube, as_vector, as_vectors, contains,
                        elevation_angle, intersect_frames, join_frames, max_elevation,
                        orthonormal_frame, region_contains)
from ..samplers import MeasureSampler
from ..sines import polar_values, substituted
from ..utils import get_logger, parallel_map

log = get_logger(__name__)

MEMBERSHIP_SLACK = 1e-12
BATCH_SIZE = 5000
# 2/(√5·π), 两锥命题中角度的缩放
TWO_CONE_FACTOR = 2.0 / (math.sqrt(5) * math.pi)


def _lhs_and_terms(S, w, u):
    S = as_vectors(S)
    n = S.shape[1]
    w = as_vector(w, ambient_dim=n)
    u = np.asarray(u, dtype=float)
    single = u.ndim == 1
    U = np.atleast_2d(u)
    if U.shape[1] != n:
        raise GeometryInputError(f"ambient dimension mismatch: {U.shape[1]} != {n}")
    if np.any(np.all(U == w, axis=1)):
        raise GeometryInputError("u must differ from w")
    vs = S - w
    lhs = float(np.abs(polar_values(vs)))
    stacked = np.broadcast_to(vs, (U.shape[0],) + vs.shape)
    terms = np.abs(polar_values(substituted(stacked, U - w)))
    return lhs, terms, single


def _result(values: np.ndarray, single: bool):
    return bool(values[0]) if single else values


def in_U_C(S, w, u, C: float):
    """u ∈ U_C(S, w): 对所有 i<j 有 |p_d sin_w(S)| <= C·(|第 i 项| + |第 j 项|)

    u 可以是 (m, n) 的批量输入. 对所有对成立等价于对最小的两项成立.
    """
    lhs, terms, single = _lhs_and_terms(S, w, u)
    smallest = np.sort(terms, axis=1)[:, :2].sum(axis=1)
    return _result(lhs <= C * smallest + MEMBERSHIP_SLACK, single)


def in_U_C_one_term(S, w, u, C: float):
    """u ∈ U'_C(S, w): 对所有 i 有 |p_d sin_w(S)| <= C·|第 i 项|"""
    lhs, terms, single = _lhs_and_terms(S, w, u)
    return _result(lhs <= C * terms.min(axis=1) + MEMBERSHIP_SLACK, single)


def in_U_C_pair(S, w, u, C: float, i: int, j: int):
    """固定一对下标的集合 U_C(S, i, j, w)"""
    lhs, terms, single = _lhs_and_terms(S, w, u)
    return _result(lhs <= C * (terms[:, i] + terms[:, j]) + MEMBERSHIP_SLACK, single)


def _independent(S) -> np.ndarray:
    S = as_vectors(S)
    if orthonormal_frame(S).rank < S.shape[0]:
        raise GeometryInputError("S must be linearly independent")
    return S


def face_frame(S: np.ndarray, i: int) -> SubspaceFrame:
    return orthonormal_frame(np.delete(S, i, axis=0), ambient_dim=S.shape[1])


def cone_i(S, i: int, eps: float) -> Cone:
    """Cone^i(ε) = Cone(ε·θ(v_i, span(S∖v_i)), span(S∖v_i), 0)"""
    S = as_vectors(S)
    L = face_frame(S, i)
    return Cone(theta=eps * elevation_angle(S[i], L), frame=L, apex=np.zeros(S.shape[1]))


def cone_complement_containment_check(S, C: float, u) -> bool:
    """u 不在任何 Cone^{i,j}(1/C) 中时必有 u ∈ U_C(S, 0), 返回该蕴含是否成立"""
    S = _independent(S)
    u = as_vector(u, ambient_dim=S.shape[1])
    if not np.any(u):
        raise GeometryInputError("u must be nonzero")
    if C < 1:
        raise GeometryInputError("C must be at least 1")
    inside = [region_contains(cone_i(S, i, 1.0 / C), u) for i in range(S.shape[0])]
    k = len(inside)
    in_some_pair = any(inside[i] and inside[j] for i in range(k) for j in range(i + 1, k))
    return in_some_pair or in_U_C(S, np.zeros(S.shape[1]), u, C)


def two_cone_containment_check(V1: SubspaceFrame, V2: SubspaceFrame, v1, v2, s: float, u) -> bool:
    """两个锥的交包含于交集子空间周围的锥

    u ∈ Cone(c·θ(v1, V2), V2, 0) ∩ Cone(c·θ(v2, V1), V1, 0), c = 2s/(√5π)
    蕴含 u ∈ Cone(s·Θ(v1, v2, V1∩V2), V1∩V2, 0).
    """
    if not 0 < s <= 1:
        raise GeometryInputError(f"s must lie in (0, 1], got {s}")
    if V1.rank != V2.rank:
        raise GeometryInputError("V1 and V2 must have the same dimension")
    k = join_frames(V1, V2).rank
    if V1.rank != k - 1 or k < 3:
        raise GeometryInputError(f"need two (k-1)-dimensional subspaces of a k-space with k >= 3, got k={k}")
    meet = intersect_frames(V1, V2)
    if meet.rank != k - 2:
        raise GeometryInputError("V1 and V2 must meet in codimension one")
    v1 = as_vector(v1, ambient_dim=V1.ambient_dim)
    v2 = as_vector(v2, ambient_dim=V1.ambient_dim)
    if not contains(V1, v1) or contains(V2, v1):
        raise GeometryInputError("v1 must lie in V1 and outside V2")
    if not contains(V2, v2) or contains(V1, v2):
        raise GeometryInputError("v2 must lie in V2 and outside V1")
    origin = np.zeros(V1.ambient_dim)
    first = Cone(theta=TWO_CONE_FACTOR * s * elevation_angle(v1, V2), frame=V2, apex=origin)
    second = Cone(theta=TWO_CONE_FACTOR * s * elevation_angle(v2, V1), frame=V1, apex=origin)
    if not (region_contains(first, u) and region_contains(second, u)):
        return True
    target = Cone(theta=s * max_elevation(v1, v2, meet), frame=meet, apex=origin)
    return region_contains(target, u)


def cone_pair_containment_check(S, i: int, j: int, s: float, u) -> bool:
    """V1 = span(S∖v_i), V2 = span(S∖v_j) 时的两锥命题: Cone^{i,j}(2s/(√5π)) ⊆ Cone(s·Θ_ij, L_ij, 0)"""
    S = _independent(S)
    if i == j:
        raise GeometryInputError("need two different indices")
    return two_cone_containment_check(face_frame(S, i), face_frame(S, j), S[j], S[i], s, u)


def _check_subspace_on_support(sampler: MeasureSampler, L: SubspaceFrame, x) -> np.ndarray:
    x = as_vector(x, ambient_dim=sampler.ambient_dim)
    if L.rank >= sampler.gamma:
        raise GeometryInputError(f"subspace dimension {L.rank} must be below gamma = {sampler.gamma}")
    if not bool(np.all(sampler.on_support(x[None, :]))):
        raise GeometryInputError("x must lie on the support of the measure")
    if not contains(L, x):
        raise GeometryInputError("x must lie in L")
    return x


def _measure_record(sampler, region, x, r, bound, count, rng) -> TubeBoundRecord:
    points = sampler.draw(x, r, count, rng)
    fraction = float(np.mean(region_contains(region, points)))
    fraction_se = math.sqrt(fraction * (1 - fraction) / count)
    mass, mass_se = sampler.ball_mass(x, r, rng=rng)
    empirical = fraction * mass
    stderr = math.hypot(fraction_se * mass, fraction * mass_se)
    return TubeBoundRecord(empirical=empirical, bound=bound, stderr=stderr, fraction=fraction,
                           ball_mass=mass, holds=bool(empirical <= bound + 3 * stderr))


def tube_measure_bound_check(sampler: MeasureSampler, L: SubspaceFrame, x, r: float, eps: float,
                             count: int = 20000, rng: Optional[np.random.Generator] = None) -> TubeBoundRecord:
    """μ(Tube(L, εr) ∩ B(x, r)) <= 2^{m+3γ/2}·C_μ·ε^{γ-m}·r^γ 的蒙特卡洛检验"""
    x = _check_subspace_on_support(sampler, L, x)
    if not 0 <= eps <= 1:
        raise GeometryInputError(f"eps must lie in [0, 1], got {eps}")
    rng = np.random.default_rng(0) if rng is None else rng
    m, gamma = L.rank, sampler.gamma
    bound = 2 ** (m + 1.5 * gamma) * sampler.c_mu * eps ** (gamma - m) * r ** gamma
    return _measure_record(sampler, Tube(frame=L, height=eps * r), x, r, bound, count, rng)


def cone_measure_bound_check(sampler: MeasureSampler, L: SubspaceFrame, x, r: float, theta: float,
                             count: int = 20000, rng: Optional[np.random.Generator] = None) -> TubeBoundRecord:
    """μ(Cone(θ, L, x) ∩ B(x, r)) <= 2^{m+3γ/2}·C_μ·sin(θ)^{γ-m}·r^γ"""
    x = _check_subspace_on_support(sampler, L, x)
    rng = np.random.default_rng(0) if rng is None else rng
    m, gamma = L.rank, sampler.gamma
    bound = 2 ** (m + 1.5 * gamma) * sampler.c_mu * math.sin(theta) ** (gamma - m) * r ** gamma
    return _measure_record(sampler, Cone(theta=theta, frame=L, apex=x), x, r, bound, count, rng)


def _check_eps(epsilon: float) -> None:
    if not 0 < epsilon < 1:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")


def _arcsin(argument: float) -> float:
    if argument > 1:
        raise ParameterError(f"arcsin argument {argument:.6g} exceeds one, epsilon too large for the bound")
    return math.asin(argument)


def s0_prime(epsilon: float, gamma: float, d: int, c_mu: float) -> float:
    _check_eps(epsilon)
    if not d - 1 < gamma <= d:
        raise ParameterError(f"gamma must lie in ({d - 1}, {d}], got {gamma}")
    base = epsilon / (2 ** (1.5 * gamma + d - 1) * c_mu ** 2 * math.comb(d + 1, 2))
    return 2 / math.pi * _arcsin(base ** (1 / (gamma + 1 - d)))


def c0_prime(epsilon: float, gamma: float, d: int, c_mu: float) -> float:
    """C_0' = √5·(π/2)² / arcsin[(ε / (2^{3γ/2+d-1}·C_μ²·binom(d+1, 2)))^{1/(γ+1-d)}]"""
    return math.sqrt(5) * math.pi / (2 * s0_prime(epsilon, gamma, d, c_mu))


def c0_double_prime(epsilon: float, d: int, c_mu: float) -> float:
    """固定一对下标 (γ = d) 时的常数 C_0'' = √5·(π/2)² / arcsin(ε / (2^{5d/2-1}·C_μ²))"""
    _check_eps(epsilon)
    return math.sqrt(5) * (math.pi / 2) ** 2 / _arcsin(epsilon / (2 ** (2.5 * d - 1) * c_mu ** 2))


def c0_one_term(epsilon: float, gamma: float, d: int, c_mu: float) -> float:
    """γ > d 时单项集合 U'_C 的常数 (π/2) / arcsin[(ε / ((d+1)·2^{d+3γ/2}·C_μ²))^{1/(γ-d)}]"""
    _check_eps(epsilon)
    if not gamma > d:
        raise ParameterError(f"the one-term constant needs gamma > d, got gamma={gamma}, d={d}")
    base = epsilon / ((d + 1) * 2 ** (d + 1.5 * gamma) * c_mu ** 2)
    return (math.pi / 2) / _arcsin(base ** (1 / (gamma - d)))


def theorem_fraction_bound(s: float, gamma: float, d: int, c_mu: float) -> float:
    """C = √5π/(2s) 时 U_C 所占比例的下界 1 - binom(d+1,2)·2^{3γ/2+d-1}·C_μ²·sin(sπ/2)^{γ+1-d}"""
    return 1 - math.comb(d + 1, 2) * 2 ** (1.5 * gamma + d - 1) * c_mu ** 2 \
        * math.sin(s * math.pi / 2) ** (gamma + 1 - d)


def log_radii(decades: str) -> List[float]:
    """"a:b:n" -> [a, b] 上 n 个对数均匀的半径"""
    try:
        low, high, num = decades.split(":")
        low, high, num = float(low), float(high), int(num)
    except ValueError:
        raise GeometryInputError(f"radii decades must look like a:b:n, got {decades!r}")
    if not 0 < low <= high or num < 1:
        raise GeometryInputError(f"invalid radii decades {decades!r}")
    return [float(r) for r in np.geomspace(low, high, num)]


class ConcentrationConfig(BaseModel):
    """集中不等式的一次蒙特卡洛检验
    参数:
    - d (int): 单纯形维数
    - n (int): 空间维数
    - epsilon (float): (0, 1) 内的例外比例
    - C (float): 常数, >= 1
    - S (List[List[float]]): d+1 个向量
    - w (List[float]): 支撑上的顶点
    - radii (List[float]): 半径
    - samples_per_ball (int): 每个球的样本数
    - seed (int): 随机种子
    - stream (int): 同一种子下的配置编号, 与半径和批次一起决定随机流
    """
    d: conint(ge=1)
    n: conint(ge=2)
    epsilon: float
    C: float
    S: List[List[float]]
    w: List[float]
    radii: List[float]
    samples_per_ball: conint(ge=1) = 20000
    seed: int = 0
    stream: conint(ge=0) = 0

    @validator('epsilon')
    def validate_epsilon(cls, v: float):
        assert 0 < v < 1, 'epsilon 必须在 (0, 1) 内'
        return v

    @validator('C')
    def validate_C(cls, v: float):
        assert v >= 1, 'C 必须不小于 1'
        return v

    @validator('S')
    def validate_S(cls, v: List[List[float]], values):
        d, n = values.get('d'), values.get('n')
        if d is not None:
            assert len(v) == d + 1, f'S 需要 d+1 = {d + 1} 个向量'
        if n is not None:
            assert all(len(vec) == n for vec in v), 'S 的向量维数与 n 不一致'
        return v

    @validator('w')
    def validate_w(cls, v: List[float], values):
        n = values.get('n')
        if n is not None:
            assert len(v) == n, 'w 的维数与 n 不一致'
        return v

    @validator('radii')
    def validate_radii(cls, v: List[float]):
        assert len(v) > 0, '至少需要一个半径'
        assert all(r > 0 for r in v), '半径必须为正'
        return v


def _radius_task(k: int, cfg: ConcentrationConfig, sampler: MeasureSampler, one_term: bool) -> RadiusRecord:
    r = cfg.radii[k]
    S = np.asarray(cfg.S, dtype=float)
    w = np.asarray(cfg.w, dtype=float)
    hits, total = 0, 0
    for b, start in enumerate(range(0, cfg.samples_per_ball, BATCH_SIZE)):
        count = min(BATCH_SIZE, cfg.samples_per_ball - start)
        rng = np.random.default_rng([cfg.seed, cfg.stream, k, b])
        points = sampler.draw(w, r, count, rng)
        # 与 w 重合的样本概率为零, 直接剔除
        points = points[np.any(points != w, axis=1)]
        member = in_U_C_one_term(S, w, points, cfg.C) if one_term else in_U_C(S, w, points, cfg.C)
        hits += int(np.sum(member))
        total += points.shape[0]
    fraction = hits / total
    stderr = math.sqrt(fraction * (1 - fraction) / total)
    threshold = 1 - cfg.epsilon - 3 * stderr
    return RadiusRecord(radius=r, fraction_in_U_C=fraction, stderr=stderr, threshold=threshold,
                        passed=bool(fraction >= threshold))


def run_concentration(cfg: ConcentrationConfig, sampler: MeasureSampler, one_term: bool = False,
                      workers: int = 1) -> List[RadiusRecord]:
    """每个半径上估计 μ(U_C ∩ B(w, r)) / μ(B(w, r)), 通过条件为 fraction >= 1 - ε - 3·stderr"""
    if sampler.ambient_dim != cfg.n:
        raise GeometryInputError("sampler and configuration live in different dimensions")
    w = np.asarray(cfg.w, dtype=float)
    if not bool(np.all(sampler.on_support(w[None, :]))):
        raise GeometryInputError("w must lie on the support of the measure")
    for r in cfg.radii:
        if r > sampler.support_diam:
            raise GeometryInputError(f"radius {r} exceeds the support diameter {sampler.support_diam}")
    task = partial(_radius_task, cfg=cfg, sampler=sampler, one_term=one_term)
    records = parallel_map(task, range(len(cfg.radii)), workers=workers)
    for rec in records:
        log.debug(f"r={rec.radius:.4g}: fraction {rec.fraction_in_U_C:.6f} ± {rec.stderr:.2e}")
    return records


def random_configuration(sampler: MeasureSampler, d: int, rng: np.random.Generator):
    """w 在支撑上, S 在全空间中任取"""
    S = rng.normal(size=(d + 1, sampler.ambient_dim))
    w = sampler.support_point(rng)
    return S, w
