"""Exact rational checks for metric Lie algebras, their Hochschild calculus and the Duflo map."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import _duflo
from ._duflo import InvariantError, UsageError

__version__ = _duflo.__version__

__all__ = [
    "InvariantError",
    "UsageError",
    "bernoulli",
    "ce_cohomology",
    "duflo_character",
    "first_divergent_key",
    "render_text",
    "run_suite",
    "to_fraction",
    "unknot",
    "validate",
]


def to_fraction(pair: list) -> Fraction:
    """[num, den] (ints or decimal strings) as a Fraction."""
    num, den = pair
    return Fraction(int(num), int(den))


def _poly(terms: list) -> dict[tuple[int, ...], Fraction]:
    return {tuple(exps): to_fraction(c) for exps, c in terms}


def validate(algebra: str) -> dict[str, Any]:
    return json.loads(_duflo.validate(algebra))


def ce_cohomology(algebra: str, module: str = "trivial") -> dict[str, Any]:
    return json.loads(_duflo.ce_cohomology(algebra, module))


def bernoulli(k: int) -> list[Fraction]:
    """B_0 .. B_k with B_1 = -1/2."""
    return [to_fraction(p) for p in json.loads(_duflo.bernoulli(k))]


def duflo_character(algebra: str, order: int) -> dict[tuple[int, ...], Fraction]:
    """j^{1/2} through total degree `order`, keyed by exponent tuples."""
    return _poly(json.loads(_duflo.duflo_character(algebra, order)))


def unknot(algebra: str, f: str = "one", h_order: int = 2, order: int | None = None) -> list[Fraction]:
    """Coefficients of h^0 .. h^K of the unknot invariant."""
    raw = _duflo.unknot(algebra, f, h_order, -1 if order is None else order)
    return [to_fraction(p) for p in json.loads(raw)]


def run_suite(config: dict[str, Any] | None = None, command: str = "suite run") -> tuple[dict[str, Any], int]:
    """Report and exit code (0 pass, 3 invariant failure, 4 identity failure)."""
    text, code = _duflo.run_suite(dict(config or {}), command)
    return json.loads(text), code


def render_text(report: dict[str, Any]) -> str:
    return _duflo.render_text(json.dumps(report))


def first_divergent_key(a: dict[str, Any], b: dict[str, Any]) -> str:
    return _duflo.first_divergent_key(json.dumps(a), json.dumps(b))
