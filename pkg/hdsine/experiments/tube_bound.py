import math
from typing import List, Optional

import numpy as np
from pydantic import conint, validator

from ..algorithms import tube_measure_bound_check
from ..geometry import orthonormal_frame
from ..samplers import CantorProductSampler, PlaneSampler
from ..utils import get_logger, trial_rng
from ..utils.make_experiment import BaseExperiment, ExperimentParams, ExperimentResult

log = get_logger(__name__)


def strip_fraction(t: float) -> float:
    """圆盘中宽度为 2t·r 的过圆心带状区域所占的比例"""
    t = min(max(t, 0.0), 1.0)
    return 2 / math.pi * (t * math.sqrt(1 - t * t) + math.asin(t))


class TubeBoundParams(ExperimentParams):
    sampler: str = 'plane'
    d: conint(ge=1) = 2
    n: conint(ge=1) = 3
    gamma: Optional[float] = None
    dims: List[int] = [0, 1]
    epsilons: List[float] = [0.05, 0.2, 0.5]
    radii: List[float] = [0.01, 0.1, 1.0]
    samples: conint(ge=1) = 20000

    @validator('sampler')
    def validate_sampler(cls, v: str):
        assert v in ('plane', 'cantor'), f'未知的采样器 {v}'
        return v

    @validator('epsilons', each_item=True)
    def validate_epsilon(cls, v: float):
        assert 0 <= v <= 1, 'epsilon 必须在 [0, 1] 内'
        return v

    @validator('radii', each_item=True)
    def validate_radius(cls, v: float):
        assert v > 0, '半径必须为正'
        return v


class TubeBoundExperiment(BaseExperiment):
    """管状邻域质量上界在 (m, ε, r) 网格上的检验

    plane 采样器中 L 取平面内的方向, 因此 d = 2, m = 1 时可以和带状区域的精确比例对照.
    """
    command = 'tube-bound'
    Params = TubeBoundParams

    def execute(self, seed: int, workers: int = 1) -> ExperimentResult:
        p = self.hparams
        if p.sampler == 'plane':
            sampler = PlaneSampler(dim=p.d, ambient_dim=p.n, rotation_seed=seed)
        else:
            gamma = p.d if p.gamma is None else p.gamma
            sampler = CantorProductSampler(d=p.d, ambient_dim=p.n, gamma=gamma)
        rows, failure = [], None
        index = 0
        for m in p.dims:
            for eps in p.epsilons:
                for r in p.radii:
                    rng = trial_rng(seed, index)
                    x = sampler.support_point(rng)
                    if p.sampler == 'plane':
                        directions = rng.normal(size=(m, p.d)) @ sampler.frame.basis
                    else:
                        directions = rng.normal(size=(m, p.n))
                    L = orthonormal_frame(x + directions, origin=x)
                    record = tube_measure_bound_check(sampler, L, x, r, eps, count=p.samples, rng=rng)
                    closed, z = np.nan, np.nan
                    if p.sampler == 'plane' and p.d == 2 and m == 1:
                        closed = strip_fraction(eps)
                        spread = math.sqrt(closed * (1 - closed) / p.samples)
                        z = abs(record.fraction - closed) / spread if spread > 0 else 0.0
                    row = dict(index=index, sampler=p.sampler, gamma=sampler.gamma, m=m, epsilon=eps,
                               radius=r, empirical=record.empirical, bound=record.bound,
                               stderr=record.stderr, fraction=record.fraction,
                               closed_form=closed, closed_form_z=z, holds=record.holds)
                    rows.append(row)
                    if not record.holds and failure is None:
                        failure = dict(row, x=x.tolist(), directions=directions.tolist())
                    index += 1
        log.info(f"tube bound: {sum(not r['holds'] for r in rows)} violations over {len(rows)} cells")
        return ExperimentResult(rows=rows, holds=failure is None, failure=failure)
