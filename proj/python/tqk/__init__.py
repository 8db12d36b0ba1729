"""Knot states of torus knots on the quantum torus."""

import json

from . import _core
from ._core import (
    TqkError,
    alexander,
    eval_state,
    gamma_topological,
    jones,
    jones_eval,
    jones_recurrence_is_zero,
    residual_inhomogeneous,
    run_cli,
    state_psi,
    state_xi,
)

__version__ = _core.version


def gammas(a, b, k, digits=16):
    return json.loads(_core.gammas_json(a, b, k, digits))


def charvar(a, b):
    return json.loads(_core.charvar_json(a, b))


def check_abelian(a, b, q, levels):
    return json.loads(_core.check_abelian_json(a, b, q, list(levels)))


def check_irreducible(a, b, ell, t, levels):
    return json.loads(_core.check_irreducible_json(a, b, ell, t, list(levels)))


def probe_microsupport(a, b, p, q, levels, control=False):
    return json.loads(_core.probe_microsupport_json(a, b, p, q, list(levels), control))
