from dsc.cli.experiments import get_all_experiment_info, get_experiment
from dsc.cli.main import cli, main

__all__ = ["cli", "get_all_experiment_info", "get_experiment", "main"]
