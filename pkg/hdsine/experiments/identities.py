from functools import partial
from typing import Dict, List

import numpy as np
from pydantic import conint

from ..data import InstanceRecord
from ..sines import (build_context, det_affine_split, equal_distance_residual, hyper_values,
                     hypersine_beta_choice, p_coefficients, polar_uniform_residual, polar_values,
                     q_coefficients, sine_addition_residual, two_term_residual)
from ..utils import chunk_indices, get_logger, parallel_map, trial_rng
from ..utils.make_experiment import BaseExperiment, ExperimentParams, ExperimentResult

log = get_logger(__name__)

RESIDUAL_TOL = 1e-9
PATH_TOL = 1e-8
# 太接近退化的基会重新抽取
MIN_POLAR_SINE = 1e-3
CHUNK_SIZE = 256


def draw_context(seed: int, index: int, d: int) -> Dict[str, np.ndarray]:
    """R^{d+1} 的一组基, 锥内的 u 以及随机的 β"""
    rng = trial_rng(seed, index)
    while True:
        vs = rng.normal(size=(d + 1, d + 1))
        if abs(float(polar_values(vs))) >= MIN_POLAR_SINE:
            break
    lambdas = rng.uniform(0.05, 1.0, size=d + 1)
    betas = rng.uniform(0.5, 2.0, size=d + 1)
    angles = rng.uniform(0.1, 1.4, size=3)
    return dict(vs=vs, u=lambdas @ vs, betas=betas, angles=angles)


def _relative(residual: float, scale: float) -> float:
    return float(residual) / max(float(scale), np.finfo(float).tiny)


def evaluate_context(vs, u, betas, angles=None) -> Dict:
    """一个上下文上的全部残差与路径差异, holds 汇总所有阈值"""
    vs, u, betas = (np.asarray(x, dtype=float) for x in (vs, u, betas))
    d = vs.shape[0] - 1
    ctx = build_context(vs, u, betas)
    scaled_norms = np.linalg.norm(ctx.scaled, axis=1).prod()
    det_residual = _relative(det_affine_split(ctx), scaled_norms)

    lhs_polar = abs(float(polar_values(vs, signed=True)))
    p = p_coefficients(ctx)
    polar_residual = _relative(p.identity_residual, lhs_polar)
    p_disagreement = float(np.max(np.abs(p.sine_ratio - p.norm_ratio) / p.norm_ratio))
    uniform_residual = _relative(polar_uniform_residual(vs, u), lhs_polar)

    hyper_betas = hypersine_beta_choice(vs)
    hyper_ctx = build_context(vs, u, hyper_betas)
    q = q_coefficients(hyper_ctx)
    lhs_hyper = abs(float(hyper_values(vs, signed=True)))
    hyper_residual = _relative(q.identity_residual, lhs_hyper)
    q_disagreement = q.max_disagreement(include_apex=False)
    apex_disagreement = q.max_disagreement(include_apex=True)
    distance_residual = equal_distance_residual(vs, hyper_betas)

    trig_residual = 0.0
    if angles is not None:
        alpha, beta, delta = angles
        trig_residual = max(float(sine_addition_residual(alpha, beta, delta)),
                            float(two_term_residual(alpha, beta)) if alpha != beta else 0.0)

    residuals = (det_residual, polar_residual, uniform_residual, hyper_residual, trig_residual)
    holds = (max(residuals) <= RESIDUAL_TOL
             and max(p_disagreement, q_disagreement, distance_residual) <= PATH_TOL
             and bool(np.all(q.values > 0)))
    return dict(d=d,
                det_residual=det_residual,
                polar_residual=polar_residual,
                polar_uniform_residual=uniform_residual,
                hyper_residual=hyper_residual,
                trig_residual=trig_residual,
                p_disagreement=p_disagreement,
                q_disagreement=q_disagreement,
                q_apex_disagreement=apex_disagreement,
                equal_distance_residual=distance_residual,
                q_min=float(q.values.min()),
                holds=bool(holds))


def context_row(seed: int, index: int, d: int) -> Dict:
    trial = draw_context(seed, index, d)
    row = dict(index=int(index))
    row.update(evaluate_context(trial["vs"], trial["u"], trial["betas"], trial["angles"]))
    return row


def _rows_chunk(indices, seed: int, d: int) -> List[Dict]:
    return [context_row(seed, i, d) for i in indices]


def context_record(seed: int, index: int, d: int, note: str = None) -> InstanceRecord:
    trial = draw_context(seed, index, d)
    return InstanceRecord(command="identities", kind="polar", seed=seed, index=index,
                          w=[0.0] * (d + 1), vs=trial["vs"].tolist(), u=trial["u"].tolist(),
                          betas=trial["betas"].tolist(), note=note)


class IdentitiesParams(ExperimentParams):
    d: conint(ge=1) = 2
    contexts: conint(ge=1) = 10000


class IdentitiesExperiment(BaseExperiment):
    """恒等式残差扫描: 行列式分解, P_i 与 Q_i 恒等式, 以及各条计算路径之间的一致性

    Args:
        d (int): 单纯形维数, 空间维数为 d+1
        contexts (int): 随机上下文个数
    """
    command = 'identities'
    Params = IdentitiesParams

    def execute(self, seed: int, workers: int = 1) -> ExperimentResult:
        d = self.hparams.d
        func = partial(_rows_chunk, seed=seed, d=d)
        rows = []
        for part in parallel_map(func, chunk_indices(self.hparams.contexts, CHUNK_SIZE), workers=workers):
            rows.extend(part)
        failing = [r for r in rows if not r["holds"]]
        failure = context_record(seed, failing[0]["index"], d, note="failure") if failing else None
        summary = dict(failures=len(failing),
                       max_det_residual=max(r["det_residual"] for r in rows),
                       max_q_disagreement=max(r["q_disagreement"] for r in rows))
        log.info(f"identities d={d}: {len(failing)} failures over {len(rows)} contexts")
        return ExperimentResult(rows=rows, holds=not failing, failure=failure, summary=summary)
