"""Arithmetic random waves on the 3-torus."""

import json

from ._core import *  # noqa: F401,F403
from ._core import __version__, run_experiment as _run_experiment


def run(config_text, experiment="", threads=1, timestamp=""):
    """Run an experiment and return its records as dicts."""
    return [json.loads(line) for line in _run_experiment(config_text, experiment, threads, timestamp)]
