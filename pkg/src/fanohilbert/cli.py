"""Command-line front end.

Exit codes: 0 success, 1 domain or validation error, 2 internal-consistency failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .catalog import catalog_get, catalog_list, load_polytope, verify_all
from .errors import ConsistencyError, DomainError
from .exactalg import parse_rational, qstr
from .expansion import DEFAULT_ORDER, coefficient_data, coefficient_values, span_report
from .hilbert import brion_check, sample_points, vertex_terms
from .localization import derived_fixed_points, load_fixed_points, localize, span_compare
from .polytope import lattice_points, polar_dual, validate
from .volmin import VolMinConfig, minimize_volume, post_minimization_report


def _vec(text: str | None, m: int) -> tuple[Fraction, ...] | None:
    if text is None:
        return None
    parts = [parse_rational(x) for x in text.split(",")]
    if len(parts) != m:
        raise DomainError(f"expected {m} comma-separated rationals, got {len(parts)}")
    return tuple(parts)


def _qvec(v) -> list[str]:
    return [qstr(x) for x in v]


def _monomial_latex(var: str, exps) -> str:
    parts = []
    for k, e in enumerate(exps):
        if e == 0:
            continue
        parts.append(f"{var}_{{{k + 1}}}" + ("" if e == 1 else f"^{{{e}}}"))
    return " ".join(parts) or "1"


def _hilbert_latex(terms) -> str:
    out = []
    for t in terms:
        factors = [f"(1 - {_monomial_latex('x', t['mu'])})"]
        factors += [f"(1 - {_monomial_latex('x', e)})" for e in t["edges"]]
        out.append("\\frac{1}{" + "".join(factors) + "}")
    return " + ".join(out)


def cmd_validate(args, P, entry):
    rep = validate(P)
    return rep.as_dict(), (0 if rep.passed else 1)


def cmd_polar(args, P, entry):
    polar = polar_dual(P)
    return {
        "dim": polar.m,
        "vertices": [list(w) for w in polar.vertices],
        "edges": [[list(e) for e in vc.edges] for vc in polar.vertex_cones],
        "mu": [list(vc.mu) for vc in polar.vertex_cones],
    }, 0


def cmd_hilbert(args, P, entry):
    terms = vertex_terms(polar_dual(P))
    if args.format == "latex":
        return _hilbert_latex(terms), 0
    return {"terms": terms}, 0


def cmd_brion(args, P, entry):
    polar = polar_dual(P)
    avoid = [e for vc in polar.vertex_cones for e in vc.edges]
    results = []
    for l in args.levels:
        for x in sample_points(polar.m, args.points, args.seed, avoid):
            results.append({"l": l, "x": _qvec(x), "ok": brion_check(polar, l, x)})
        results[-1]["count"] = len(lattice_points(polar, l))
    ok = all(r["ok"] for r in results)
    return {"ok": ok, "checks": results}, (0 if ok else 2)


def cmd_coeffs(args, P, entry):
    polar = polar_dual(P)
    tab = coefficient_values(polar, _vec(args.at, P.m), args.order, args.seed)
    return {str(i): qstr(v) for i, v in sorted(tab.values.items())}, 0


def cmd_grad(args, P, entry):
    polar = polar_dual(P)
    _, G = coefficient_data(polar, _vec(args.at, P.m), args.order, args.seed)
    return {str(i): _qvec(g) for i, g in sorted(G.gradients.items())}, 0


def _span(args, P):
    polar = polar_dual(P)
    _, G = coefficient_data(polar, _vec(args.at, P.m), args.order, args.seed)
    lo = -(P.m + 1)
    hi = args.max_i if args.max_i is not None else min(-1, args.order)
    return span_report(G, range(lo, hi + 1))


def cmd_rank(args, P, entry):
    rep = _span(args, P)
    return {
        "rank": rep.rank,
        "basis": [_qvec(v) for v in rep.basis],
        "membership": {str(i): _qvec(c) for i, c in sorted(rep.membership.items())},
    }, 0


def cmd_localize(args, P, entry):
    if args.weights:
        fps = load_fixed_points(args.weights)
    elif args.derived:
        fps = derived_fixed_points(polar_dual(P))
    else:
        raise DomainError("localize needs --weights FILE or --derived")
    L = localize(fps, args.seed)
    fmt = (lambda f: f.format(latex=True)) if args.format == "latex" else (lambda f: f.to_json())
    out = {"source": fps.source, "c1_top": fmt(L.c1_top), "rank": L.rank}
    if L.c1sq_c2 is not None:
        out["c1sq_c2"] = fmt(L.c1sq_c2)
    if args.compare:
        if fps.source != "derived":
            raise DomainError("--compare requires --derived (same coordinates as the gradients)")
        rep = _span(args, P)
        out["gradient_rank"] = rep.rank
        out["span_equal"] = span_compare(L, rep)
    return out, 0


def cmd_volmin(args, P, entry):
    polar = polar_dual(P)
    seed_point = None if args.seed_point is None else [float(x) for x in _vec(args.seed_point, P.m)]
    res = minimize_volume(polar, VolMinConfig(tol=args.tol, max_iter=args.max_iter, initial=seed_point))
    out = res.to_json()
    out["post_report"] = post_minimization_report(polar, res.rational_point).to_json()
    return out, (0 if res.converged else 1)


def cmd_catalog(args):
    if args.action == "list":
        return catalog_list(), 0
    if args.action == "show":
        if not args.name:
            raise DomainError("catalog show needs a NAME")
        return catalog_get(args.name).to_json(), 0
    report = verify_all(args.seed)
    ok = all(all(c.values()) for c in report.values())
    return {"ok": ok, "entries": report}, (0 if ok else 2)


_COMMANDS = {
    "validate": cmd_validate,
    "polar": cmd_polar,
    "hilbert": cmd_hilbert,
    "brion": cmd_brion,
    "coeffs": cmd_coeffs,
    "grad": cmd_grad,
    "rank": cmd_rank,
    "localize": cmd_localize,
    "volmin": cmd_volmin,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fanohilbert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("source", help="polytope JSON file or catalog:NAME")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "latex", "text"), default="json")
        return p

    add("validate", "check primitivity, origin interior, reflexivity and smoothness")
    add("polar", "polar polytope with edge generators")
    add("hilbert", "vertex-sum shape of the Hilbert series")
    p = add("brion", "exact Brion identity at sample points")
    p.add_argument("--levels", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--points", type=int, default=5)
    for name, text in (("coeffs", "Laurent coefficients C_i"), ("grad", "gradients of C_i"), ("rank", "gradient span")):
        p = add(name, text)
        p.add_argument("--at", help="free part of the Reeb vector, e.g. 1/2,0")
        p.add_argument("--order", type=int, default=DEFAULT_ORDER)
        if name == "rank":
            p.add_argument("--max-i", type=int, default=None, help="largest order in the span (default -1)")
    p = add("localize", "fixed-point integrals")
    p.add_argument("--weights", help="fixed-point weight JSON")
    p.add_argument("--derived", action="store_true", help="derive weights from the polytope")
    p.add_argument("--compare", action="store_true", help="compare with the gradient span")
    p.add_argument("--at", default=None)
    p.add_argument("--order", type=int, default=-1)
    p.add_argument("--max-i", type=int, default=None)
    p = add("volmin", "minimize the volume over the Reeb slice")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=200)
    p.add_argument("--seed-point", default=None)

    p = sub.add_parser("catalog", help="built-in polytopes")
    p.add_argument("action", choices=("list", "show", "verify-all"))
    p.add_argument("name", nargs="?")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _emit(out, fmt):
    if isinstance(out, str):
        print(out)
    elif fmt == "text" and isinstance(out, dict):
        for k, v in out.items():
            print(f"{k}: {json.dumps(v)}")
    else:
        print(json.dumps(out, indent=2))


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "catalog":
            out, code = cmd_catalog(args)
        else:
            P, entry = load_polytope(args.source, check=args.command != "validate")
            out, code = _COMMANDS[args.command](args, P, entry)
    except ConsistencyError as exc:
        print(f"consistency error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(out, args.format)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
