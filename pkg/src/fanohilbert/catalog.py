"""Named polytopes shipped with the package, with their expected results.

Each entry is a JSON file in ``data/`` using the polytope schema plus an
``expected`` block; every expected block carries a ``provenance`` string.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import DomainError, ValidationError
from .exactalg import parse_rational, qstr
from .expansion import coefficient_data, gradient_generating_check, span_report
from .polytope import FanoPolytope, PolarPolytope, polar_dual, validate

__all__ = [
    "CatalogEntry",
    "catalog_list",
    "catalog_get",
    "polytope_from_json",
    "load_polytope",
    "polar_matches",
    "verify_entry",
    "verify_all",
]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    polytope: FanoPolytope
    dim_W: int | None = None
    expected: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def polar(self) -> PolarPolytope:
        return polar_dual(self.polytope)

    def to_json(self) -> dict:
        out = {"name": self.name, "dim": self.polytope.m, "vertices": [list(v) for v in self.polytope.vertices]}
        if self.dim_W is not None:
            out["dim_W"] = self.dim_W
        out["expected"] = self.expected
        return out


def _canonical_polar(vertices, edges) -> dict:
    return {tuple(w): sorted(tuple(e) for e in es) for w, es in zip(vertices, edges)}


def polar_matches(polar: PolarPolytope, expected: dict) -> bool:
    """Compare a computed polar with supplied vertices (and optional edges) up to ordering."""
    got_w = sorted(tuple(w) for w in polar.vertices)
    want_w = sorted(tuple(w) for w in expected["vertices"])
    if got_w != want_w:
        return False
    if expected.get("edges") is None:
        return True
    got = _canonical_polar(polar.vertices, [vc.edges for vc in polar.vertex_cones])
    return got == _canonical_polar(expected["vertices"], expected["edges"])


def polytope_from_json(data: dict, check: bool = True) -> FanoPolytope:
    """Build and validate a polytope; a supplied ``polar`` block must agree with the computed dual."""
    try:
        verts = tuple(tuple(int(x) for x in v) for v in data["vertices"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed polytope data: {exc}") from None
    P = FanoPolytope(verts, data.get("name", ""))
    if "dim" in data and data["dim"] != P.m:
        raise DomainError(f"declared dim {data['dim']} but vertices have dimension {P.m}")
    if not check:
        return P
    validate(P).raise_for_failure()
    if data.get("polar") is not None and not polar_matches(polar_dual(P), data["polar"]):
        raise ValidationError("supplied polar data does not match the computed polar dual")
    return P


@lru_cache(maxsize=None)
def _raw_entries() -> dict[str, dict]:
    out = {}
    for res in resources.files(__package__).joinpath("data").iterdir():
        if res.name.endswith(".json"):
            data = json.loads(res.read_text())
            out[data["name"]] = data
    return out


def catalog_list() -> list[str]:
    return sorted(_raw_entries())


@lru_cache(maxsize=None)
def catalog_get(name: str) -> CatalogEntry:
    raw = _raw_entries()
    if name not in raw:
        raise DomainError(f"unknown catalog entry {name!r}; known: {', '.join(catalog_list())}")
    data = raw[name]
    P = polytope_from_json(data)
    expected = data.get("expected", {})
    if expected and "provenance" not in expected:
        raise ValidationError(f"catalog entry {name} has expectations without provenance")
    return CatalogEntry(name, P, data.get("dim_W"), expected)


def load_polytope(source: str, check: bool = True) -> tuple[FanoPolytope, CatalogEntry | None]:
    """``catalog:NAME`` or a path to a polytope JSON file."""
    if source.startswith("catalog:"):
        entry = catalog_get(source.split(":", 1)[1])
        return entry.polytope, entry
    path = Path(source)
    if not path.exists():
        raise DomainError(f"no such file: {source}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"{source}: invalid JSON ({exc})") from None
    return polytope_from_json(data, check), None


def _eval_surd(expr: str) -> float:
    return float(eval(expr, {"__builtins__": {}}, {"sqrt": math.sqrt}))


def verify_entry(entry: CatalogEntry | str, seed: int = 0) -> dict:
    """Recompute every expectation of an entry; returns {check: bool}."""
    from .localization import derived_fixed_points, load_fixed_points, localize, span_compare
    from .polytope import polar_volume
    from .volmin import minimize_volume

    if isinstance(entry, str):
        entry = catalog_get(entry)
    exp = entry.expected
    polar = entry.polar
    m = polar.m
    checks: dict[str, bool] = {"validate": validate(entry.polytope).passed}
    if "polar" in exp:
        checks["polar"] = polar_matches(polar, exp["polar"])
    order = max([-1] + [int(i) for i in exp.get("values", {})] + [int(i) for i in exp.get("gradients", {})])
    vals, grads = coefficient_data(polar, None, N=order, seed=seed)
    lead = vals[-(m + 1)]
    checks["volume_identity"] = lead == math.factorial(m) * polar_volume(entry.polytope) / (m + 1) ** (m + 1)
    if "volume" in exp:
        checks["volume"] = polar_volume(entry.polytope) == parse_rational(exp["volume"])
    for i, v in exp.get("values", {}).items():
        checks[f"C[{i}]"] = vals[int(i)] == parse_rational(v)
    for i, g in exp.get("gradients", {}).items():
        checks[f"grad C[{i}]"] = grads[int(i)] == tuple(parse_rational(x) for x in g)
    rep = span_report(grads, range(-(m + 1), 0))
    if "rank" in exp:
        checks["rank"] = rep.rank == exp["rank"]
    if "basis" in exp:
        checks["basis"] = [list(v) for v in rep.basis] == exp["basis"]
    if m == 3:
        checks["rank<=2"] = rep.rank <= 2
        L = localize(derived_fixed_points(polar), seed)
        checks["span_compare"] = span_compare(L, rep)
    if entry.dim_W == 0:
        checks["dim_W=0 gradients vanish"] = all(all(x == 0 for x in g) for g in grads.gradients.values())
    for k, gen in enumerate(exp.get("generating", [])):
        direction = [parse_rational(x) for x in gen["direction"]]
        res = gradient_generating_check(polar, gen["q"], direction, N=-1, components=gen["components"], gradients=grads)
        # forms flagged inconsistent must indeed disagree
        checks[f"generating[{k}]"] = bool(res) == gen["consistent"]
    if "fixed_points" in exp:
        L = localize(load_fixed_points(exp["fixed_points"]), seed)
        want = exp["localization"]
        checks["localization c1_top"] = L.c1_top.to_json() == want["c1_top"]
        checks["localization c1sq_c2"] = L.c1sq_c2.to_json() == want["c1sq_c2"]
    if "minimizer" in exp:
        res = minimize_volume(polar)
        target = [_eval_surd(x) for x in exp["minimizer"]]
        checks["minimizer"] = res.converged and all(abs(a - b) <= 1e-8 for a, b in zip(res.minimizer, target))
    return checks


def verify_all(seed: int = 0) -> dict[str, dict[str, bool]]:
    return {name: verify_entry(name, seed) for name in catalog_list()}
