"""Minimum-cost sensor selection for structural observability."""

import json

from ._core import (
    Instance,
    InstanceTooLarge,
    InsufficientSensors,
    ObselError,
    ValidationError,
    __version__,
    generate,
    is_structurally_cyclic,
    load,
    loads,
    scc_decompose,
    solve_lsap,
    structural_rank,
    verify,
)
from . import _core


def analyze(instance):
    """Structural report: rank, SCC table and parent classification."""
    return json.loads(_core._analyze_json(instance))


def solve(instance):
    """Full report including the optimal assignment and its certificate."""
    return json.loads(_core._solve_json(instance))


__all__ = [
    "Instance", "InstanceTooLarge", "InsufficientSensors", "ObselError", "ValidationError",
    "__version__", "analyze", "generate", "is_structurally_cyclic", "load", "loads",
    "scc_decompose", "solve", "solve_lsap", "structural_rank", "verify",
]
