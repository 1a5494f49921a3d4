"""Exact open A-model and B-model potentials of local P^1."""

import json
from fractions import Fraction

from . import _core

__all__ = ["psi_number", "normal_form", "potential", "compare"]


def psi_number(genus, heights):
    return Fraction(_core.psi_number(genus, list(heights)))


def normal_form(text):
    return _core.normal_form(text)


def potential(kind, genus, boundaries, q_order=6, max_winding=3):
    """Coefficients of F or W as {(mu_1, ..., mu_n, p_exponent): coefficient string}."""
    table = json.loads(_core.potential_json(kind, genus, boundaries, q_order, max_winding))
    return {tuple(t["exponents"]): t["coeff_string"] for t in table["terms"]}


def compare(genus, boundaries, q_order=6, max_winding=3):
    """Winding slots where F and (-1)^(g-1) W differ; empty when they agree."""
    return [tuple(k) for k in _core.mismatched_slots(genus, boundaries, q_order, max_winding)]
