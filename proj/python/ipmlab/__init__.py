"""Besov IPM estimation rates and minimax lower-bound certificates."""

import json

from ._core import (  # noqa: F401
    SolverError,
    analyze,
    choose_K,
    choose_truncation,
    closed_form_ipm,
    plugin_ipm,
)
from . import _core


def prior_pair(K, tau=1.0, grid=2001):
    """Moment-matched prior pair as a dict (q0, q1, gap, kappa)."""
    return json.loads(_core._prior_pair_json(K, tau, grid))


def certificate(n, beta, gamma, d, c=2.0, tau=1.0, grid=2001):
    """Finite-n lower-bound certificate as a dict."""
    return json.loads(_core._certificate_json(n, beta, gamma, d, c, tau, grid))


def rate_sweep(family="boundary", d=1, beta=1.0, gamma=0.5, n_grid=None, reps=50, seed=1, threads=0):
    """Monte Carlo sweep; returns rows and the fitted log-log slope."""
    return json.loads(_core._rate_sweep_json(family, d, beta, gamma, list(n_grid or []), reps, seed, threads))
