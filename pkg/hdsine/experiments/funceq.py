import numpy as np
from pydantic import conint, validator

from ..exceptions import DomainError
from ..sines import cube_grid, functional_equation_residual, membership_test, named_function
from ..sines.generalized import ZERO_SET_TOL
from ..utils import get_logger
from ..utils.make_experiment import BaseExperiment, ExperimentParams, ExperimentResult

log = get_logger(__name__)


class FunceqParams(ExperimentParams):
    family: str = 'sk'
    c: float = 1.0
    k: float = 1.0
    grid: conint(ge=2) = 40
    low: float = -1.5
    high: float = 1.5
    tol: float = 1e-9

    @validator('family')
    def validate_family(cls, v: str):
        assert v in ('sk', 'square', 'cos', 'perturbed'), f'未知的函数族 {v}'
        return v

    @validator('high')
    def validate_high(cls, v: float, values):
        low = values.get('low')
        if low is not None:
            assert v > low, 'high 必须大于 low'
        return v

    @validator('tol')
    def validate_tol(cls, v: float):
        assert v > 0, 'tol 必须为正'
        return v


class FunceqExperiment(BaseExperiment):
    """函数方程在 [low, high]³ 网格上的残差, 每个可用网格点一行

    Args:
        family (str): sk, square, cos 或 perturbed
        c (float): sk 的幅值
        k (float): sk 的曲率
        grid (int): 每个坐标轴上的点数
        low, high (float): 网格范围
        tol (float): 缩放残差的阈值
    """
    command = 'funceq'
    Params = FunceqParams

    def execute(self, seed: int, workers: int = 1) -> ExperimentResult:
        p = self.hparams
        f = named_function(p.family, c=p.c, k=p.k)
        alpha, beta, delta = cube_grid(p.low, p.high, p.grid)
        result = membership_test(f, (alpha, beta, delta), tol=p.tol)
        index = np.flatnonzero(np.abs(np.asarray(f(delta), dtype=float)) > ZERO_SET_TOL)
        alpha, beta, delta = alpha[index], beta[index], delta[index]
        residual = np.atleast_1d(functional_equation_residual(f, alpha, beta, delta))
        scaled = residual / np.maximum(1.0, np.abs(np.asarray(f(alpha + beta), dtype=float)))
        holds = scaled <= p.tol
        rows = [dict(index=int(i), family=p.family, alpha=float(a), beta=float(b), delta=float(dl),
                     residual=float(r), scaled_residual=float(s), holds=bool(h))
                for i, a, b, dl, r, s, h in zip(index, alpha, beta, delta, residual, scaled, holds)]
        if not rows:
            raise DomainError("no admissible grid point")
        failure = None
        if not result.member:
            worst = int(np.argmax(scaled))
            failure = dict(rows[worst], c=p.c, k=p.k, max_scaled_residual=result.max_scaled_residual)
        log.info(f"{p.family}: member={result.member}, max scaled residual {result.max_scaled_residual:.3e} "
                 f"over {result.admissible_points} points")
        return ExperimentResult(rows=rows, holds=result.member, failure=failure, summary=result.dict())
