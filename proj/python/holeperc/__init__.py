"""Hole percolation on random cubical sets: estimators, sweeps and checks."""

from ._holeperc import (
    Configuration,
    InvariantViolation,
    Window,
    estimate,
    from_bytes,
    load_snapshot,
    sample_configuration,
    sweep,
    verify,
)

__all__ = [
    "Configuration",
    "InvariantViolation",
    "Window",
    "estimate",
    "from_bytes",
    "load_snapshot",
    "sample_configuration",
    "sweep",
    "verify",
]
