"""Canonical threshold bounds for 3-fold pairs via weighted blowups.

Every function returns plain Python data decoded from the engine's JSON.
Rationals stay exact as "p/q" strings; use ``fraction`` to convert.
"""

import json
from fractions import Fraction

from . import _core
from ._core import (
    ContextMismatch,
    InvariantViolation,
    ParseError,
    PreconditionError,
    UndeterminedError,
)

DEFAULT_JET_CAP = _core.DEFAULT_JET_CAP
DEFAULT_SEARCH_CAP = _core.DEFAULT_SEARCH_CAP
DEFAULT_SEED = _core.DEFAULT_SEED

__all__ = [
    "ContextMismatch",
    "InvariantViolation",
    "ParseError",
    "PreconditionError",
    "UndeterminedError",
    "audit",
    "blowup",
    "certify",
    "classify",
    "fraction",
    "gorenstein_bound",
    "quotient_bound",
    "residues",
    "run_cli",
    "search_bound",
    "smooth_bound",
    "valuation",
]


def fraction(value):
    """Fraction from a "p/q" string."""
    return Fraction(value)


def valuation(poly, weight, index=1, vars=None):
    return json.loads(_core.valuation(poly, list(weight), index, vars))


def blowup(poly, weight, vars=None):
    return json.loads(_core.blowup(poly, list(weight), vars))


def classify(psi, jet_cap=DEFAULT_JET_CAP):
    return json.loads(_core.classify(psi, jet_cap))


def search_bound(psi, phi=None, cap=DEFAULT_SEARCH_CAP):
    return json.loads(_core.search_bound(psi, phi, cap))


def smooth_bound(psi, jet_cap=DEFAULT_JET_CAP):
    return json.loads(_core.smooth_bound(psi, jet_cap))


def gorenstein_bound(phi, psi="t", jet_cap=DEFAULT_JET_CAP):
    return json.loads(_core.gorenstein_bound(phi, psi, jet_cap))


def quotient_bound(r, a, psi):
    return json.loads(_core.quotient_bound(r, a, psi))


def residues(r, coordinate_residues, phi_residue, psi_residue=None):
    return json.loads(_core.residues(r, list(coordinate_residues), phi_residue, psi_residue))


def certify(family, d):
    return json.loads(_core.certify(family, d))


def audit(seed=DEFAULT_SEED, corpus=None, per_case=70, cap=DEFAULT_SEARCH_CAP, jet_cap=DEFAULT_JET_CAP):
    """Gap audit over the seeded corpus, or over ``corpus`` text if given."""
    if corpus is not None:
        return json.loads(_core.audit_corpus(corpus, cap, jet_cap))
    return json.loads(_core.audit_seeded(seed, per_case, cap, jet_cap))


def run_cli(args, env_jet_cap=None):
    """Runs ct-lab in process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli(list(args), env_jet_cap)
