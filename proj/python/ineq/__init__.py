"""Ostrowski-type inequality bounds, backed by the C++ core."""

import json

from . import _core
from ._core import (
    Expr,
    IneqError,
    arithmetic_mean,
    generalized_log_mean_pow,
    logarithmic_mean,
    sweep_csv,
)

__all__ = [
    "Expr",
    "IneqError",
    "arithmetic_mean",
    "bound",
    "corpus",
    "generalized_log_mean_pow",
    "load_corpus",
    "logarithmic_mean",
    "proposition",
    "sweep",
    "sweep_csv",
    "verify_identity",
]


def verify_identity(expr, a, b, n, x=None, rule="point", tol=1e-9):
    return json.loads(_core.verify_identity(expr, a, b, n, x, rule, tol))


def bound(family, expr, a, b, n, x=None, rule="point", p=None, q=None, variant="corrected", tol=1e-10):
    return json.loads(_core.bound(family, expr, a, b, n, x, rule, p, q, variant, tol))


def sweep(expr, a, b, **kwargs):
    """Records, skips, best bound per group and corrected/printed pairs."""
    return json.loads(_core.sweep(expr, a, b, **kwargs))


def proposition(which, alpha, beta, n, x, q=1.0, variant="corrected"):
    return json.loads(_core.proposition(which, alpha, beta, n, x, q, variant))


def corpus():
    return json.loads(_core.corpus())


def load_corpus(path):
    return json.loads(_core.load_corpus(str(path)))
