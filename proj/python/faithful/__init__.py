"""Faithfulness of bipartite quantum states."""

import json

from ._core import (
    ContractViolation,
    InvariantViolation,
    ccnr_norm,
    isotropic,
    max_entangled,
    max_singlet_fraction,
    obs4_detectable,
    obs5_counterexample,
    ppt_min_eigenvalue,
    rfw_decomposition,
    run_table,
    sample,
    sdp_max_overlap,
    werner_qubit,
    x_operator,
)
from ._core import classify_json as _classify_json


def classify(rho, seesaw_restarts=50, full_certificates=False):
    """Classification report of a two-qudit density matrix, as a dict."""
    return json.loads(_classify_json(rho, seesaw_restarts, full_certificates))


__all__ = [
    "ContractViolation",
    "InvariantViolation",
    "ccnr_norm",
    "classify",
    "isotropic",
    "max_entangled",
    "max_singlet_fraction",
    "obs4_detectable",
    "obs5_counterexample",
    "ppt_min_eigenvalue",
    "rfw_decomposition",
    "run_table",
    "sample",
    "sdp_max_overlap",
    "werner_qubit",
    "x_operator",
]
