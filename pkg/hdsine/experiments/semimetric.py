from pydantic import conint, validator

from ..metrics import audit_rows, summarize
from ..utils import get_logger
from ..utils.make_experiment import BaseExperiment, ExperimentParams, ExperimentResult

log = get_logger(__name__)


class SemimetricParams(ExperimentParams):
    kind: str = 'polar'
    d: conint(ge=1) = 2
    n: conint(ge=2) = 4
    trials: conint(ge=1) = 100000

    @validator('kind')
    def validate_kind(cls, v: str):
        assert v in ('polar', 'hyper'), f'未知的正弦类型 {v}'
        return v

    @validator('n')
    def validate_n(cls, v: int, values):
        d = values.get('d')
        if d is not None:
            assert v >= d + 1, f'n 至少为 d+1 = {d + 1}'
        return v


class SemimetricExperiment(BaseExperiment):
    """单纯形不等式与对称性的随机检验

    Args:
        kind (str): polar 或 hyper
        d (int): 单纯形维数
        n (int): 空间维数, n >= d+1
        trials (int): 试验次数
    """
    command = 'semimetric'
    Params = SemimetricParams

    def execute(self, seed: int, workers: int = 1) -> ExperimentResult:
        p = self.hparams
        rows = audit_rows(p.kind, p.d, p.n, p.trials, seed, workers=workers)
        summary = summarize(p.kind, p.d, p.n, seed, rows)
        log.info(f"{p.kind} d={p.d} n={p.n}: {summary.failures} failures, "
                 f"{summary.symmetry_failures} symmetry failures, min slack {summary.min_slack:.3e}")
        rows = [dict(index=r['index'], kind=p.kind, d=p.d, n=p.n, **{k: v for k, v in r.items() if k != 'index'})
                for r in rows]
        failure = summary.worst if not summary.holds else None
        return ExperimentResult(rows=rows, holds=summary.holds, failure=failure,
                                summary=summary.dict(exclude={'worst'}))
