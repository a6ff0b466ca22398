"""Optimal physical approximations of the transposition map."""

import json

from ._antimap import (
    apply_choi,
    average_transpose_fidelity,
    build_unitary,
    clone_fidelity,
    clone_via_dilation,
    cloning_map,
    cv_optimal,
    haar_random_state,
    haar_random_unitary,
    kraus_operators,
    optimal_choi,
    optimal_fidelity,
    optimal_map,
    partial_trace,
    random_tp_channel,
    reference_qubit_unitary,
    run_json,
    stinespring_isometry,
    swap_operator,
    transpose_via_dilation,
)

__version__ = "0.1.0"


def run(command, **kwargs):
    """Run a CLI command in-process and return the report (timing omitted) as a dict."""
    return json.loads(run_json(command, **kwargs))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
