from functools import partial
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..data import AuditSummary, InstanceRecord, SimplexInequalityReport
from ..exceptions import GeometryInputError
from ..geometry import (DEFAULT_TOL, SubspaceFrame, as_vector, as_vectors, contains,
                        orthonormal_frame, project)
from ..sines import (PointConfig, SineKind, build_context, identity_beta, q_coefficients,
                     sign_flip_reduction, sine_values, substituted)
from ..utils import chunk_indices, get_logger, parallel_map, trial_rng

log = get_logger(__name__)

SLACK_TOL = 1e-9
SYMMETRY_TOL = 1e-10
FAMILIES = ("gaussian", "near_dependent", "near_parallel", "scaled")
FAMILY_WEIGHTS = (0.7, 0.1, 0.1, 0.1)
CHUNK_SIZE = 2048


def holds_with_slack(lhs, rhs_sum):
    return rhs_sum - lhs >= -SLACK_TOL * np.maximum(1.0, lhs)


def simplex_terms(kind, vs: np.ndarray, u: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """批量计算不等式两边, vs 形状 (..., d+1, n), u 形状 (..., n), 均已平移到顶点"""
    lhs = np.abs(sine_values(kind, vs))
    terms = np.abs(sine_values(kind, substituted(vs, u)))
    return lhs, terms


def check_simplex_inequality(kind, cfg: PointConfig, u) -> SimplexInequalityReport:
    """|sin_w(v)| <= Σ_i |sin_w(第 i 个换成 u)|"""
    u = as_vector(u, ambient_dim=cfg.n)
    if not np.any(u - cfg.w):
        raise GeometryInputError("u must differ from the vertex w")
    lhs, terms = simplex_terms(kind, cfg.shifted, u - cfg.w)
    lhs = float(lhs)
    slack = float(terms.sum()) - lhs
    return SimplexInequalityReport(lhs=lhs, rhs_terms=[float(t) for t in terms], slack=slack,
                                   holds=bool(holds_with_slack(lhs, lhs + slack)))


def _single(kind, vs: np.ndarray) -> float:
    return float(np.abs(sine_values(kind, vs)))


def check_projection_monotonicity(kind, vs, u, V: SubspaceFrame) -> bool:
    """|sin_0(v_1..v_d, P_V u)| <= |sin_0(v_1..v_d, u)|, v_i ∈ V, dim V = d+1"""
    vs = as_vectors(vs, ambient_dim=V.ambient_dim)
    u = as_vector(u, ambient_dim=V.ambient_dim)
    if V.rank != vs.shape[0] + 1:
        raise GeometryInputError(f"V must have dimension d+1 = {vs.shape[0] + 1}, got {V.rank}")
    for i, v in enumerate(vs):
        if not contains(V, v):
            raise GeometryInputError(f"v_{i + 1} does not lie in V")
    projected = _single(kind, np.vstack([vs, project(V, u)[None, :]]))
    original = _single(kind, np.vstack([vs, u[None, :]]))
    return projected <= original + SLACK_TOL


def check_orthogonal_one_term(kind, cfg: PointConfig, u, V: Optional[SubspaceFrame] = None) -> bool:
    """u ⊥ V 时对每个 i 都有 |sin_0(v)| <= |sin_0(第 i 个换成 u)|

    V 省略时取 span(vs - w) 并要求其维数为 d+1.
    """
    vs = cfg.shifted
    u = as_vector(u, ambient_dim=cfg.n) - cfg.w
    V = orthonormal_frame(vs) if V is None else V
    if V.rank != cfg.d + 1:
        raise GeometryInputError(f"V must have dimension d+1 = {cfg.d + 1}, got {V.rank}")
    for i, v in enumerate(vs):
        if not contains(V, v):
            raise GeometryInputError(f"v_{i + 1} does not lie in V")
    norm = float(np.linalg.norm(u))
    if norm == 0:
        raise GeometryInputError("u must be nonzero")
    if np.linalg.norm(project(V, u)) > 10 * V.tolerance * norm:
        raise GeometryInputError("u is not orthogonal to V")
    lhs, terms = simplex_terms(kind, vs, u)
    return bool(np.all(float(lhs) <= terms + SLACK_TOL))


def check_chain(kind, cfg: PointConfig, u) -> bool:
    """n > d+1 时先投影到 span(vs) 再用 d+1 维的结论:
    LHS <= Σ terms(P u) <= Σ terms(u); P u = 0 时退化为单项界
    """
    if cfg.n <= cfg.d + 1:
        raise GeometryInputError("the chaining argument needs n > d+1")
    vs = cfg.shifted
    u = as_vector(u, ambient_dim=cfg.n) - cfg.w
    V = orthonormal_frame(vs)
    if V.rank < cfg.d + 1:
        # 依赖的向量组 LHS = 0
        return True
    pu = project(V, u)
    lhs, terms = simplex_terms(kind, vs, u)
    lhs = float(lhs)
    if np.linalg.norm(pu) <= V.tolerance * np.linalg.norm(u):
        return bool(np.all(lhs <= terms + SLACK_TOL))
    _, projected_terms = simplex_terms(kind, vs, pu)
    first = bool(holds_with_slack(lhs, float(projected_terms.sum())))
    second = bool(np.all(projected_terms <= terms + SLACK_TOL))
    return first and second


def identity_path_holds(kind, cfg: PointConfig, u) -> bool:
    """n = d+1 时按恒等式证明的路径判断不等式是否成立

    符号翻转后 u 落在锥内, polar 取 β_i = 1/‖v_i‖ 检查 ‖ũ‖ <= 1,
    hyper 取面体积 β 检查 max Q_i <= 1.
    """
    kind = SineKind(kind)
    if cfg.n != cfg.d + 1:
        raise GeometryInputError("the identity path lives in dimension d+1")
    vs = cfg.shifted
    u = as_vector(u, ambient_dim=cfg.n) - cfg.w
    if orthonormal_frame(vs).rank < cfg.d + 1:
        return True
    flipped = sign_flip_reduction(vs, u)
    for v in flipped:
        line = orthonormal_frame(v[None, :])
        if np.linalg.norm(u - project(line, u)) <= DEFAULT_TOL * np.linalg.norm(u):
            # u 与某个 v_i 平行, 对应项等于 LHS
            return True
    ctx = build_context(flipped, u, identity_beta(kind.value, flipped))
    if kind is SineKind.polar:
        return float(np.linalg.norm(ctx.u_tilde)) <= 1 + SLACK_TOL
    return float(q_coefficients(ctx).values.max()) <= 1 + SLACK_TOL


def draw_trial(seed: int, index: int, d: int, n: int) -> Dict:
    """由 (seed, index) 决定的一次随机输入"""
    rng = trial_rng(seed, index)
    family = FAMILIES[int(rng.choice(len(FAMILIES), p=FAMILY_WEIGHTS))]
    w = rng.normal(size=n)
    vs = rng.normal(size=(d + 1, n))
    u = rng.normal(size=n)
    if family == "near_dependent":
        coef = rng.normal(size=d)
        vs[-1] = coef @ vs[:-1] + 1e-7 * rng.normal(size=n)
    elif family == "near_parallel":
        k = int(rng.integers(d + 1))
        u = vs[k] * rng.uniform(0.5, 2.0) + 1e-7 * np.linalg.norm(vs[k]) * rng.normal(size=n)
    elif family == "scaled":
        scale = 10.0 ** float(rng.choice([-8, 8]))
        w, vs, u = w * scale, vs * scale, u * scale
    permutation = rng.permutation(d + 1)
    return dict(family=family, w=w, vs=w + vs, u=w + u, permutation=permutation)


def _audit_chunk(indices, kind: str, d: int, n: int, seed: int) -> List[Dict]:
    trials = [draw_trial(seed, i, d, n) for i in indices]
    if not trials:
        return []
    w = np.stack([t["w"] for t in trials])
    vs = np.stack([t["vs"] for t in trials]) - w[:, None, :]
    u = np.stack([t["u"] for t in trials]) - w
    lhs, terms = simplex_terms(kind, vs, u)
    perms = np.stack([t["permutation"] for t in trials])
    permuted = np.take_along_axis(vs, perms[:, :, None], axis=1)
    symmetry = np.abs(np.abs(sine_values(kind, permuted)) - lhs)
    rows = []
    for pos, index in enumerate(indices):
        rhs_sum = float(terms[pos].sum())
        rows.append(dict(index=int(index),
                         family=trials[pos]["family"],
                         lhs=float(lhs[pos]),
                         rhs_sum=rhs_sum,
                         slack=rhs_sum - float(lhs[pos]),
                         symmetry_error=float(symmetry[pos]),
                         holds=bool(holds_with_slack(lhs[pos], rhs_sum)) and bool(symmetry[pos] <= SYMMETRY_TOL)))
    return rows


def audit_rows(kind, d: int, n: int, trials: int, seed: int, workers: int = 1) -> List[Dict]:
    kind = SineKind(kind).value
    if d < 1 or n < d + 1:
        raise GeometryInputError(f"need d >= 1 and n >= d+1, got d={d}, n={n}")
    if trials < 1:
        raise GeometryInputError("trials must be at least 1")
    chunks = chunk_indices(trials, CHUNK_SIZE)
    func = partial(_audit_chunk, kind=kind, d=d, n=n, seed=seed)
    rows = []
    for part in parallel_map(func, chunks, workers=workers):
        rows.extend(part)
    return rows


def instance_record(kind, seed: int, index: int, d: int, n: int, note: Optional[str] = None) -> InstanceRecord:
    trial = draw_trial(seed, index, d, n)
    return InstanceRecord(command="semimetric", kind=SineKind(kind).value, seed=seed, index=index,
                          family=trial["family"], w=trial["w"].tolist(), vs=trial["vs"].tolist(),
                          u=trial["u"].tolist(), note=note)


def summarize(kind, d: int, n: int, seed: int, rows: List[Dict]) -> AuditSummary:
    slacks = np.array([r["slack"] for r in rows])
    worst_pos = int(np.argmin(slacks))
    failures = sum(1 for r in rows if not holds_with_slack(r["lhs"], r["rhs_sum"]))
    symmetry_failures = sum(1 for r in rows if r["symmetry_error"] > SYMMETRY_TOL)
    failing = [r for r in rows if not r["holds"]]
    target = failing[0] if failing else rows[worst_pos]
    note = "failure" if failing else "minimal slack"
    return AuditSummary(kind=SineKind(kind).value, d=d, n=n, trials=len(rows), seed=seed,
                        failures=failures, symmetry_failures=symmetry_failures,
                        min_slack=float(slacks.min()),
                        max_symmetry_error=float(max(r["symmetry_error"] for r in rows)),
                        worst=instance_record(kind, seed, target["index"], d, n, note=note))


def semimetric_audit(kind, d: int, n: int, trials: int, seed: int, workers: int = 1) -> AuditSummary:
    """随机检验单纯形不等式与对称性, 返回最小余量、失败次数与最坏实例"""
    rows = audit_rows(kind, d, n, trials, seed, workers=workers)
    summary = summarize(kind, d, n, seed, rows)
    log.info(f"{summary.kind} audit d={d} n={n}: {summary.failures} failures, "
             f"min slack {summary.min_slack:.3e}")
    return summary
