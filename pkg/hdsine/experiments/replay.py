from pathlib import Path

import numpy as np
from pydantic import ValidationError, validator

from ..data import InstanceRecord
from ..exceptions import GeometryInputError
from ..geometry import abs_contents, elevation_sine, orthonormal_frame
from ..metrics import SYMMETRY_TOL, check_simplex_inequality
from ..sines import PointConfig, sine_values
from ..utils import get_logger
from ..utils.make_experiment import BaseExperiment, ExperimentParams, ExperimentResult
from .identities import evaluate_context

log = get_logger(__name__)


class ReplayParams(ExperimentParams):
    instance_file: str

    @validator('instance_file')
    def validate_instance_file(cls, v: str):
        assert Path(v).is_file(), f'找不到实例文件 {v}'
        return v


def _semimetric_row(record: InstanceRecord) -> dict:
    w, vs, u = record.arrays
    cfg = PointConfig(w=w, vs=vs)
    report = check_simplex_inequality(record.kind, cfg, u)
    shifted = cfg.shifted
    log.info(f"content of the edges at w: {float(abs_contents(shifted)):.17g}")
    log.info(f"edge norms: {np.linalg.norm(shifted, axis=1).tolist()}")
    for i, v in enumerate(shifted):
        rest = orthonormal_frame(np.delete(shifted, i, axis=0), ambient_dim=cfg.n)
        log.info(f"elevation sine of v_{i + 1} over the other edges: {elevation_sine(v, rest):.17g}")
    log.info(f"{record.kind} sine {report.lhs:.17g}, terms {report.rhs_terms}, slack {report.slack:.17g}")
    reversed_lhs = float(np.abs(sine_values(record.kind, shifted[::-1])))
    symmetry_error = abs(reversed_lhs - report.lhs)
    row = dict(index=record.index, kind=record.kind, family=record.family, lhs=report.lhs,
               rhs_sum=float(sum(report.rhs_terms)), slack=report.slack, symmetry_error=symmetry_error)
    row.update({f"term_{i + 1}": t for i, t in enumerate(report.rhs_terms)})
    row['holds'] = report.holds and symmetry_error <= SYMMETRY_TOL
    return row


def _identities_row(record: InstanceRecord) -> dict:
    _, vs, u = record.arrays
    if record.betas is None:
        raise GeometryInputError("an identities instance needs betas")
    row = dict(index=record.index)
    row.update(evaluate_context(vs, u, record.betas))
    for key, value in row.items():
        log.info(f"{key}: {value}")
    return row


class ReplayExperiment(BaseExperiment):
    """重新计算一个失败转储里的实例, 并在日志中打印中间量

    Args:
        instance_file (str): 之前运行写出的 <output>.failure.json
    """
    command = 'replay'
    Params = ReplayParams

    def execute(self, seed: int, workers: int = 1) -> ExperimentResult:
        try:
            record = InstanceRecord.load_from_disk(self.hparams.instance_file)
        except (ValueError, ValidationError) as e:
            raise GeometryInputError(f"cannot read instance file {self.hparams.instance_file}: {e}") from e
        log.info(f"replaying {record.command} instance seed={record.seed} index={record.index}")
        if record.command == 'semimetric':
            row = _semimetric_row(record)
        elif record.command == 'identities':
            row = _identities_row(record)
        else:
            raise GeometryInputError(f"instances of <{record.command}> cannot be replayed")
        row['source_seed'] = record.seed
        return ExperimentResult(rows=[row], holds=bool(row['holds']),
                                failure=None if row['holds'] else record)
