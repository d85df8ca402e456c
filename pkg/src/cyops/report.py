"""Deterministic JSON-ready views of analysis results.

Rationals become "p/q" strings, series become ``{"shift", "truncation",
"coefficients"}`` objects and dictionaries keep insertion order.
"""

from __future__ import annotations

from gmpy2 import mpq

from . import __version__
from .core.poly import Poly, rat_str
from .core.ratfunc import RatFunc
from .core.series import LogSeries, Series
from .operators import DOperator, ThetaOperator, to_d_form, to_theta_form


def jsonable(x):
    """Recursively convert library values to JSON-compatible values."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if type(x).__name__ in ("mpq", "mpz"):
        return rat_str(mpq(x))
    if isinstance(x, Series):
        return series_json(x)
    if isinstance(x, LogSeries):
        return [series_json(p) for p in x.parts]
    if isinstance(x, (RatFunc, Poly)):
        return x.to_str()
    if isinstance(x, (DOperator, ThetaOperator)):
        return operator_json(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


def series_json(s: Series) -> dict:
    return {"shift": s.shift, "truncation": s.precision,
            "coefficients": [rat_str(c) for c in s.coeffs]}


def operator_json(L) -> dict:
    theta = to_theta_form(L)
    return {"theta_form": theta.to_str(), "d_form": to_d_form(L).monic().to_str(),
            "order": L.order}


def verdict_json(v) -> dict:
    props = {}
    for name, r in v.properties.items():
        props[name] = {"pass": r.passed, "witness": jsonable(r.witness), "detail": r.detail}
    out = {"overall": v.overall, "properties": props,
           "irreducibility": v.irreducibility,
           "depth": v.depth, "prime_bound": v.prime_bound}
    if v.algebraic is not None:
        out["algebraic"] = v.algebraic
    return out


def galois_json(g) -> dict:
    return {"ambient": g.ambient, "classification": g.classification,
            "evidence": [{"criterion": c, "holds": h} for c, h in g.evidence],
            "sym_root": operator_json(g.sym_root) if g.sym_root is not None else None}


def lambert_json(lam) -> dict:
    return {"ell": lam.ell, "coefficients": [rat_str(c) for c in lam.coefficients],
            "integral": lam.is_integral()}


def normal_form_json(nf) -> dict:
    return {"q": series_json(nf.q),
            "structure_series": [series_json(a) for a in nf.structure_series],
            "y_invariants": [series_json(y) for y in nf.y_invariants]}


def version() -> str:
    return __version__
