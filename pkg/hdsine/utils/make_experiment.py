from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Type

import srsly
from pydantic import BaseModel

from .utils import _plain, get_logger

log = get_logger()


class ExperimentParams(BaseModel):
    """实验参数的基类, 未知的键直接报错"""

    class Config:
        extra = 'forbid'


@dataclass
class ExperimentResult:
    """一次实验的输出
    参数:
    - rows (List[Dict]): 结果行, 每行都带 command, seed, index
    - holds (bool): 所有行的 holds/pass 是否都为真
    - failure (BaseModel | Dict): 第一个失败的实例, 没有失败时为 None
    - summary (Dict): 写进日志的汇总信息
    """
    rows: List[Dict[str, Any]]
    holds: bool
    failure: Optional[Any] = None
    summary: Dict[str, Any] = field(default_factory=dict)

    def dump_failure(self, file_path: Path) -> Optional[Path]:
        if self.failure is None:
            return None
        path = Path(file_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        if hasattr(self.failure, 'save_to_disk'):
            return self.failure.save_to_disk(path)
        data = self.failure.dict() if isinstance(self.failure, BaseModel) else dict(self.failure)
        srsly.write_json(path, {k: _plain(v) for k, v in data.items()})
        return path


class BaseExperiment:
    """实验的基类, 子类需要声明 command, Params 并完成 execute 方法
    内置功能:
    - 用 Params 校验参数, 拒绝未知的键和越界的数值
    - 保存超参数到 self.hparams
    - 给每行补上 command, seed, index 三列并放在最前面
    """
    command: str = ''
    Params: Type[ExperimentParams] = ExperimentParams

    def __init__(self, name: Optional[str] = None, **kwargs):
        self.name = name or self.command
        self.hparams = self.Params(**kwargs)

    def execute(self, seed: int, workers: int = 1) -> ExperimentResult:
        raise NotImplementedError

    def run(self, seed: int, workers: int = 1) -> ExperimentResult:
        log.info(f"Running <{self.command}> with {self.hparams.dict()}")
        result = self.execute(seed=int(seed), workers=max(1, int(workers)))
        result.rows = [self.tag(row, seed) for row in result.rows]
        return result

    def tag(self, row: Dict[str, Any], seed: int) -> Dict[str, Any]:
        head = {'command': self.command, 'seed': int(seed), 'index': int(row.get('index', 0))}
        head.update({k: v for k, v in row.items() if k not in head})
        return head
