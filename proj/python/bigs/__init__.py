"""Graph sampling as bipartite incidence graph sampling."""

import json

from . import _core
from ._core import (
    ArgumentError,
    ConstraintError,
    EnumerationCapError,
    InfeasibleError,
    ParseError,
    __version__,
    enumerate_motifs,
    observation_distance,
    srswor_inclusion,
)


def run(config):
    """Run an experiment described by a config dict; returns the report as a dict.

    Keys match the CLI config file, e.g. {"command": "reproduce", "builtin": "thompson1990"}.
    """
    return json.loads(_core.run_json(json.dumps(config)))


def table(report, name):
    """Rows of a report table as dicts keyed by column name."""
    for t in report["tables"]:
        if t["name"] == name:
            return [dict(zip(t["columns"], row)) for row in t["rows"]]
    raise KeyError(name)


__all__ = [
    "ArgumentError",
    "ConstraintError",
    "EnumerationCapError",
    "InfeasibleError",
    "ParseError",
    "__version__",
    "enumerate_motifs",
    "observation_distance",
    "run",
    "srswor_inclusion",
    "table",
]
