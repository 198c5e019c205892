from typing import List, Optional

from pydantic import conint, validator

from ..algorithms import (ConcentrationConfig, c0_one_term, c0_prime, log_radii,
                          random_configuration, run_concentration)
from ..samplers import CantorProductSampler, MeasureSampler, PlaneSampler
from ..utils import get_logger, trial_rng
from ..utils.make_experiment import BaseExperiment, ExperimentParams, ExperimentResult

log = get_logger(__name__)

SAMPLERS = ('plane', 'cantor', 'ball')


class ConcentrationParams(ExperimentParams):
    sampler: str = 'plane'
    d: conint(ge=1) = 2
    n: conint(ge=2) = 3
    gamma: Optional[float] = None
    epsilon: float = 0.2
    C: Optional[float] = None
    configs: conint(ge=1) = 20
    samples: conint(ge=1) = 20000
    radii: Optional[List[float]] = None
    radii_decades: str = '0.01:1:7'
    one_term: bool = False

    @validator('sampler')
    def validate_sampler(cls, v: str):
        assert v in SAMPLERS, f'未知的采样器 {v}'
        return v

    @validator('n')
    def validate_n(cls, v: int, values):
        d = values.get('d')
        if d is not None:
            assert v >= d, f'n 至少为 d = {d}'
        return v

    @validator('epsilon')
    def validate_epsilon(cls, v: float):
        assert 0 < v < 1, 'epsilon 必须在 (0, 1) 内'
        return v

    @validator('C')
    def validate_C(cls, v: Optional[float]):
        assert v is None or v >= 1, 'C 必须不小于 1'
        return v


def build_sampler(params: ConcentrationParams, seed: int) -> MeasureSampler:
    """plane: R^n 中随机方向的 d 维平面; ball: R^n 上的 Lebesgue 测度; cantor: Cantor 乘积测度"""
    if params.sampler == 'plane':
        return PlaneSampler(dim=params.d, ambient_dim=params.n, rotation_seed=seed)
    if params.sampler == 'ball':
        return PlaneSampler(dim=params.n, ambient_dim=params.n)
    gamma = params.d if params.gamma is None else params.gamma
    return CantorProductSampler(d=params.d, ambient_dim=params.n, gamma=gamma)


class ConcentrationExperiment(BaseExperiment):
    """U_C (或单项的 U'_C) 在小球里所占比例的蒙特卡洛估计, 每个 (配置, 半径) 一行

    Args:
        sampler (str): plane, cantor 或 ball
        d (int): 单纯形维数
        n (int): 空间维数
        gamma (float): cantor 采样器的维数
        epsilon (float): 例外比例
        C (float): 常数, 省略时取 c0_prime (one_term 时取 c0_one_term)
        configs (int): 随机 (S, w) 的个数
        samples (int): 每个球的样本数
        radii (List[float]): 半径, 省略时由 radii_decades 生成
        radii_decades (str): a:b:n 形式的对数均匀半径
        one_term (bool): 检验单项集合 U'_C
    """
    command = 'concentration'
    Params = ConcentrationParams

    def execute(self, seed: int, workers: int = 1) -> ExperimentResult:
        p = self.hparams
        sampler = build_sampler(p, seed)
        radii = p.radii if p.radii else log_radii(p.radii_decades)
        C = p.C
        if C is None:
            if p.one_term:
                C = c0_one_term(p.epsilon, sampler.gamma, p.d, sampler.c_mu)
            else:
                C = c0_prime(p.epsilon, sampler.gamma, p.d, sampler.c_mu)
        log.info(f"{p.sampler} sampler: gamma={sampler.gamma}, C_mu={sampler.c_mu:.4f}, C={C:.6g}")
        rows, failure = [], None
        for config in range(p.configs):
            S, w = random_configuration(sampler, p.d, trial_rng(seed, config))
            cfg = ConcentrationConfig(d=p.d, n=p.n, epsilon=p.epsilon, C=C, S=S.tolist(), w=w.tolist(),
                                      radii=radii, samples_per_ball=p.samples, seed=seed, stream=config)
            for k, record in enumerate(run_concentration(cfg, sampler, one_term=p.one_term, workers=workers)):
                row = dict(index=config * len(radii) + k, config=config, sampler=p.sampler,
                           gamma=sampler.gamma, C=C, radius=record.radius,
                           fraction_in_U_C=record.fraction_in_U_C, stderr=record.stderr,
                           threshold=record.threshold, holds=record.passed)
                rows.append(row)
                if not record.passed and failure is None:
                    failure = dict(row, S=cfg.S, w=cfg.w, epsilon=p.epsilon, one_term=p.one_term)
        worst = min(rows, key=lambda r: r['fraction_in_U_C'])
        log.info(f"minimal fraction {worst['fraction_in_U_C']:.6f} at r={worst['radius']:.4g} "
                 f"(config {worst['config']}), target {1 - p.epsilon:.3f}")
        return ExperimentResult(rows=rows, holds=failure is None, failure=failure,
                                summary=dict(C=C, min_fraction=worst['fraction_in_U_C']))
