"""Command line interface: ``cyops <command> <source> [options]``.

Exit codes: 0 success, 1 property failure under ``--strict``, 2 errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, corpus
from .checker import (DEFAULT_DEPTH, DEFAULT_PRIME_BOUND, check_cy_type, galois_classify,
                      reconstruct_sym_root)
from .constructions import sym_power_order2
from .core.poly import rat_str
from .errors import CyopsError
from .frobenius import local_structure, mum_flag
from .normal_form import lambert_coefficients, normal_form, special_normal_form_equal
from .operators import INFINITY, dual, indicial, singular_points, to_d_form, to_theta_form
from .report import (galois_json, jsonable, lambert_json, normal_form_json, operator_json,
                     series_json, verdict_json)
from .validation import check_operator

COMMANDS = ("analyze", "dual", "exponents", "flag", "qcoord", "yinv", "lambert", "sympow",
            "symroot", "galois", "equiv", "corpus")


class _Failure(Exception):
    """Property failure, reported with exit code 1 under --strict."""


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyops",
                                description="Exact analysis of Calabi-Yau-type differential operators.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("source", nargs="*",
                   help="corpus name, path to an .op file, or an operator expression")
    p.add_argument("--truncation", type=int, default=50)
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("--depth", type=int, default=None,
                   help="N-integrality depth (analyze) or number of Lambert coefficients (lambert)")
    p.add_argument("--prime-bound", type=int, default=DEFAULT_PRIME_BOUND)
    p.add_argument("--power", type=int, default=2, help="exponent n for sympow")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--version", action="version", version=f"cyops {__version__}")
    p.set_defaults(fmt="text")
    return p


def _one_source(args):
    if len(args.source) != 1:
        raise ValueError(f"{args.command} needs exactly one operator source")
    return check_operator(args.source[0])


def _params(args) -> dict:
    return {"truncation": args.truncation, "ell": args.ell,
            "depth": args.depth if args.depth is not None else DEFAULT_DEPTH,
            "prime_bound": args.prime_bound}


def _lambert_depth(args, nf) -> int:
    depth = args.depth if args.depth is not None else 10
    return max(1, min(depth, len(nf.q) - 1))


# ---------------------------------------------------------------------------
# commands; each returns (json_payload, text_lines, ok)


def cmd_analyze(args):
    L = _one_source(args)
    params = _params(args)
    verdict = check_cy_type(L, min(args.truncation, 30), args.prime_bound, params["depth"])
    report = {"operator": operator_json(L), "verdict": verdict_json(verdict)}
    lines = [f"operator: {to_theta_form(L).to_str()}", f"order: {L.order}"]
    for name, r in verdict.properties.items():
        w = jsonable(r.witness)
        lines.append(f"property {name}: {'pass' if r.passed else 'fail'}  witness: {w}")
    lines.append(f"irreducibility: {verdict.irreducibility}")
    lines.append(f"CY-type: {verdict.overall}")
    nf_json = lam_json = gal_json = None
    if verdict.property_M.passed and L.order >= 2:
        nf = normal_form(L, args.truncation)
        nf_json = normal_form_json(nf)
        lines.append("q: " + ", ".join(rat_str(c) for c in nf.q.coeffs[:8]))
        lams = []
        depth = min(10, len(nf.q) - 1)
        for i, Y in enumerate(nf.y_invariants, start=1):
            lam = lambert_coefficients(Y, args.ell, depth)
            lams.append(lambert_json(lam))
            lines.append(f"N_{i},d,{args.ell}: " + ", ".join(rat_str(c) for c in lam.coefficients))
        lam_json = lams
        if verdict.property_P.passed:
            g = galois_classify(L, min(args.truncation, 30))
            gal_json = galois_json(g)
            lines.append(f"galois: {g.classification} (ambient {g.ambient})")
    report.update({"normal_form": nf_json, "lambert": lam_json, "galois": gal_json,
                   "params": params, "version": __version__})
    return report, lines, verdict.overall


def cmd_dual(args):
    L = _one_source(args)
    D = dual(to_d_form(L))
    payload = {"operator": operator_json(L), "dual": operator_json(D)}
    return payload, [f"dual (theta form): {to_theta_form(D).to_str()}",
                     f"dual (D form, monic): {D.monic().to_str()}"], True


def _points(L):
    pts, residual = singular_points(L)
    pts = sorted(set(pts) | {0})
    return pts + [INFINITY], residual


def cmd_exponents(args):
    L = _one_source(args)
    pts, residual = _points(L)
    out, lines = [], []
    for p in pts:
        label = "infinity" if p == INFINITY else rat_str(p)
        try:
            ind = indicial(L, p)
        except CyopsError as e:
            out.append({"point": label, "error": str(e)})
            lines.append(f"{label}: {e}")
            continue
        entry = {"point": label, "indicial": ind.polynomial.to_str("T"),
                 "exponents": [rat_str(e) for e in ind.exponents],
                 "residual_factor": ind.residual_factor.to_str("T")}
        try:
            ls = local_structure(L, p, 16)
            entry["log_blocks"] = list(ls.block_sizes)
        except CyopsError:
            pass
        out.append(entry)
        blocks = entry.get("log_blocks")
        lines.append(f"{label}: exponents {', '.join(entry['exponents'])}"
                     + (f"  blocks {blocks}" if blocks else ""))
    if residual.degree > 0:
        lines.append(f"irrational singular points: roots of {residual.to_str()}")
    return {"operator": operator_json(L), "points": out,
            "irrational_singularities": residual.to_str() if residual.degree > 0 else None}, lines, True


def cmd_flag(args):
    L = _one_source(args)
    flag = mum_flag(L, args.truncation)
    fs = [flag.f(k) for k in range(flag.order)]
    lines = [f"f_{k}: " + ", ".join(rat_str(c) for c in f.coeffs[:10]) for k, f in enumerate(fs)]
    return {"mum_exponent": str(flag.mum_exponent), "f": [series_json(f) for f in fs]}, lines, True


def cmd_qcoord(args):
    nf = normal_form(_one_source(args), args.truncation)
    return {"q": series_json(nf.q)}, ["q: " + ", ".join(rat_str(c) for c in nf.q.coeffs)], True


def cmd_yinv(args):
    L = _one_source(args)
    if L.order < 4:
        from .errors import OrderTooSmall
        raise OrderTooSmall("Y-invariants need an operator of order >= 4")
    nf = normal_form(L, args.truncation)
    lines = [f"Y_{i}: " + ", ".join(rat_str(c) for c in Y.coeffs)
             for i, Y in enumerate(nf.y_invariants, start=1)]
    return {"y_invariants": [series_json(Y) for Y in nf.y_invariants]}, lines, True


def cmd_lambert(args):
    L = _one_source(args)
    depth = args.depth if args.depth is not None else 10
    nf = normal_form(L, max(args.truncation, depth + 2))
    lams = [lambert_coefficients(Y, args.ell, depth) for Y in nf.y_invariants]
    lines = [f"Y_{i}: " + ", ".join(rat_str(c) for c in lam.coefficients)
             for i, lam in enumerate(lams, start=1)]
    return {"lambert": [lambert_json(x) for x in lams]}, lines, all(x.is_integral() for x in lams)


def cmd_sympow(args):
    L = _one_source(args)
    S = sym_power_order2(L, args.power)
    return {"sym_power": operator_json(S), "n": args.power}, [
        f"Sym^{args.power} (theta form): {to_theta_form(S).to_str()}"], True


def cmd_symroot(args):
    L = _one_source(args)
    P = reconstruct_sym_root(L, args.truncation)
    return {"sym_root": operator_json(P)}, [f"root (D form): {P.to_str()}",
                                            f"root (theta form): {to_theta_form(P).to_str()}"], True


def cmd_galois(args):
    g = galois_classify(_one_source(args), min(args.truncation, 30))
    lines = [f"ambient: {g.ambient}", f"classification: {g.classification}"]
    lines += [f"  {c}: {h}" for c, h in g.evidence]
    if g.sym_root is not None:
        lines.append(f"  root: {g.sym_root.to_str()}")
    return galois_json(g), lines, g.classification != "undetermined"


def cmd_equiv(args):
    if len(args.source) != 2:
        raise ValueError("equiv needs two operator sources")
    L1, L2 = (check_operator(s) for s in args.source)
    same = special_normal_form_equal(L1, L2, min(args.truncation, 30))
    return {"equivalent": same}, [str(same).lower()], same


def cmd_corpus(args):
    if not args.source:
        entries = [corpus.entry(n) for n in corpus.names()]
        return ({"corpus": [{"name": e.name, "source": e.source} for e in entries]},
                [f"{e.name}: {e.source}" for e in entries], True)
    e = corpus.entry(args.source[0])
    return ({"name": e.name, "source": e.source, "operator": operator_json(e.operator)},
            [f"# {e.name}: {e.source}", e.operator.to_str()], True)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    handler = globals()[f"cmd_{args.command}"]
    try:
        payload, lines, ok = handler(args)
    except (CyopsError, ValueError, KeyError, FileNotFoundError, ArithmeticError) as e:
        print(f"cyops: error: {e}", file=sys.stderr)
        return 2
    if args.fmt == "json":
        out.write(json.dumps(jsonable(payload), indent=2, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    if args.strict and not ok:
        return 1
    return 0


def main(argv=None) -> int:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
