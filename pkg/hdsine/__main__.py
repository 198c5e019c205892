import sys
from pathlib import Path

import hydra
from hydra.errors import InstantiationException
from omegaconf import DictConfig
from pydantic import ValidationError
from rich.console import Console

from .exceptions import HdsineError
from .utils import utils
from .utils.make_experiment import BaseExperiment

log = utils.get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2


def _usage_error(message: str) -> int:
    Console(stderr=True).print(f"[bold red]error:[/bold red] {message}")
    log.error(message)
    return EXIT_USAGE


def execute(config: DictConfig) -> int:
    """实例化实验, 运行并写出结果

    Returns:
        int: 0 全部通过, 1 参数错误, 2 出现违反性质的实例
    """
    try:
        log.info(f"Instantiating experiment <{config.experiment._target_}>")
        experiment: BaseExperiment = hydra.utils.instantiate(config.experiment, _convert_="all")
    except (InstantiationException, ValidationError, HdsineError) as e:
        cause = e.__cause__ if e.__cause__ is not None else e
        return _usage_error(str(cause))

    try:
        result = experiment.run(seed=config.seed, workers=config.workers)
    except HdsineError as e:
        return _usage_error(str(e))

    output_path = Path(config.output_path)
    log.info(f"Writing {len(result.rows)} rows to {output_path}")
    utils.write_rows(result.rows, output_path, format=config.format)
    for key, value in result.summary.items():
        log.info(f"{key}: {value}")

    if result.holds:
        log.info("All checks passed!")
        return EXIT_OK
    dump = result.dump_failure(output_path.with_name(output_path.name + ".failure.json"))
    log.warning(f"Property violated, offending instance written to {dump}")
    return EXIT_VIOLATION


@hydra.main(config_path="configs/", config_name="config.yaml", version_base='1.1')
def run(config: DictConfig) -> None:
    """Contains the experiment pipeline.
    Instantiates the experiment from config, runs it and exits with its status.

    Args:
        config (DictConfig): Configuration composed by Hydra.
    """

    utils.extras(config)
    if config.get("print_config"):
        utils.print_config(config, resolve=True)

    sys.exit(execute(config))


if __name__ == "__main__":
    run()
