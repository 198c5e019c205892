from pathlib import Path
from typing import List, Optional

import numpy as np
import srsly
from pydantic import BaseModel, conint, constr, validator


def exact(values) -> List:
    """浮点数转成最短的可往返十进制字符串, 嵌套列表保持结构"""
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0:
        return repr(float(arr))
    return [exact(v) for v in arr]


class InstanceRecord(BaseModel):
    """一个可以复现的输入实例
    参数:
    - command (str): 产生该实例的命令, semimetric 或 identities
    - kind (str): polar 或 hyper
    - seed (int): 随机种子
    - index (int): 试验编号
    - family (str): 随机输入所属的分布族
    - w (List[float]): 顶点
    - vs (List[List[float]]): d+1 个向量
    - u (List[float]): 代入的向量
    - betas (List[float]): identities 实例的缩放系数
    """
    command: constr(strip_whitespace=True, min_length=1)
    kind: constr(strip_whitespace=True, min_length=1)
    seed: int
    index: conint(ge=0)
    family: str = "gaussian"
    w: List[float]
    vs: List[List[float]]
    u: List[float]
    betas: Optional[List[float]] = None
    note: Optional[str] = None

    @validator('kind')
    def validate_kind(cls, v: str):
        assert v in ('polar', 'hyper'), f'未知的正弦类型 {v}'
        return v

    @validator('vs')
    def validate_vs(cls, v: List[List[float]], values):
        assert len(v) >= 2, '至少需要两个向量'
        n = len(values.get('w') or [])
        for vec in v:
            assert len(vec) == n, '向量维数与顶点不一致'
            assert all(np.isfinite(vec)), '坐标必须有限'
        return v

    @validator('u')
    def validate_u(cls, v: List[float], values):
        assert len(v) == len(values.get('w') or []), '向量维数与顶点不一致'
        return v

    def save_to_disk(self, file_path: Path) -> Path:
        """以json格式保存, 坐标存为可以精确还原的字符串
        参数:
        - file_path (Path): 保存地址, 例如 ./failure.json
        """
        path = Path(file_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        data = self.dict()
        for key in ('w', 'vs', 'u', 'betas'):
            if data.get(key) is not None:
                data[key] = exact(data[key])
        srsly.write_json(path, data)
        return path

    @classmethod
    def load_from_disk(cls, file_path: Path) -> "InstanceRecord":
        return cls.parse_obj(srsly.read_json(Path(file_path)))

    @property
    def arrays(self):
        return np.asarray(self.w, dtype=float), np.asarray(self.vs, dtype=float), np.asarray(self.u, dtype=float)


class SimplexInequalityReport(BaseModel):
    """lhs <= Σ rhs_terms 的检验结果, slack = Σ rhs - lhs"""
    lhs: float
    rhs_terms: List[float]
    slack: float
    holds: bool

    @validator('holds')
    def validate_holds(cls, v: bool, values):
        lhs, slack = values.get('lhs'), values.get('slack')
        if lhs is not None and slack is not None:
            assert v == (slack >= -1e-9 * max(1.0, lhs)), 'holds 与 slack 不一致'
        return v


class AuditSummary(BaseModel):
    kind: str
    d: int
    n: int
    trials: int
    seed: int
    failures: int
    symmetry_failures: int
    min_slack: float
    max_symmetry_error: float
    worst: Optional[InstanceRecord] = None

    @property
    def holds(self) -> bool:
        return self.failures == 0 and self.symmetry_failures == 0


class RadiusRecord(BaseModel):
    """一个半径上的 U_C 比例"""
    radius: float
    fraction_in_U_C: float
    stderr: float
    threshold: float
    passed: bool


class TubeBoundRecord(BaseModel):
    empirical: float
    bound: float
    stderr: float
    fraction: float
    ball_mass: float
    holds: bool
