import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Sequence, TypeVar

import numpy as np
import pandas as pd
import rich.syntax
import rich.tree
import srsly
from omegaconf import DictConfig, OmegaConf

T = TypeVar("T")
R = TypeVar("R")

FLOAT_FORMAT = "%.17g"


def get_logger(name=__name__) -> logging.Logger:
    """Initializes python command line logger."""

    logger = logging.getLogger(name)
    return logger


def extras(config: DictConfig) -> None:
    """A couple of optional utilities, controlled by main config file:
    - disabling warnings
    - falling back to a single worker when the worker count is not positive

    Modifies DictConfig in place.

    Args:
        config (DictConfig): Configuration composed by Hydra.
    """

    log = get_logger(__name__)

    # disable python warnings if <config.ignore_warnings=True>
    if config.get("ignore_warnings"):
        log.info("Disabling python warnings! <config.ignore_warnings=True>")
        warnings.filterwarnings("ignore")

    if config.get("workers") is not None and int(config.workers) < 1:
        log.info(f"Non-positive worker count <{config.workers}>, using a single worker")
        config.workers = 1


def print_config(
    config: DictConfig,
    fields: Sequence[str] = (
        "experiment",
        "seed",
        "workers",
        "format",
        "output_path",
    ),
    resolve: bool = True,
) -> None:
    """Prints content of DictConfig using Rich library and its tree structure.

    Args:
        config (DictConfig): Configuration composed by Hydra.
        fields (Sequence[str], optional): Determines which main fields from config will
        be printed and in what order.
        resolve (bool, optional): Whether to resolve reference fields of DictConfig.
    """

    style = "dim"
    tree = rich.tree.Tree("CONFIG", style=style, guide_style=style)

    for field in fields:
        branch = tree.add(field, style=style, guide_style=style)

        config_section = config.get(field)
        branch_content = str(config_section)
        if isinstance(config_section, DictConfig):
            branch_content = OmegaConf.to_yaml(config_section, resolve=resolve)

        branch.add(rich.syntax.Syntax(branch_content, "yaml"))

    rich.print(tree)

    with open("config_tree.log", "w") as fp:
        rich.print(tree, file=fp)


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """每个试验独立的随机流, 只由(seed, index)决定, 与调度顺序无关"""
    return np.random.default_rng([int(seed), int(index)])


def chunk_indices(total: int, chunk_size: int) -> List[range]:
    return [range(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]


def parallel_map(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """按输入顺序返回结果的进程池map
    参数:
    - func: 模块级函数(需要可以pickle)
    - items: 输入
    - workers: 进程数, 1表示在当前进程执行
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def write_rows(rows: List[Dict[str, Any]], path: Path, format: str = "csv") -> Path:
    """将结果行写到硬盘, csv使用17位有效数字, json与csv字段一致
    参数:
    - rows: 每行一个字典, 键的顺序即列的顺序
    - path: 输出文件
    - format: csv或json
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if format == "csv":
        df = pd.DataFrame.from_records(rows)
        df.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    elif format == "json":
        srsly.write_json(path, [{k: _plain(v) for k, v in row.items()} for row in rows])
    else:
        raise ValueError(f"unknown output format {format}")
    return path


def _plain(value: Any) -> Any:
    if isinstance(value, (float, np.floating)):
        # json 没有 NaN, 写成 null
        return float(value) if np.isfinite(value) else None
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value
