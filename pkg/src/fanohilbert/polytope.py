"""Fano lattice polytopes, their polar duals and lattice points of dilates.

A :class:`FanoPolytope` is given by the primitive ray generators ``v_j`` of a
complete fan.  Its polar ``{y : <v_j, y> >= -1}`` is computed by brute force
over all ``m``-subsets of the facet inequalities, which is instantaneous for
the small polytopes this package deals with.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Sequence

from .errors import DomainError, ValidationError
from .exactalg import as_rational, matq_det, matq_nullspace, matq_rank, matq_solve

__all__ = [
    "FanoPolytope",
    "VertexCone",
    "PolarPolytope",
    "LatticePointSet",
    "ValidationReport",
    "CheckResult",
    "validate",
    "polar_dual",
    "lattice_points",
    "reeb_margin",
    "polar_volume",
    "ehrhart_counts",
    "lattice_automorphisms",
]


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = gcd(*v)
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class FanoPolytope:
    """Lattice polytope whose vertices are the fan generators v_j in Z^m."""

    vertices: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        verts = tuple(tuple(int(x) for x in v) for v in self.vertices)
        if not verts:
            raise DomainError("a polytope needs at least one vertex")
        if len({len(v) for v in verts}) != 1:
            raise DomainError("vertices have inconsistent dimensions")
        object.__setattr__(self, "vertices", verts)

    @property
    def m(self) -> int:
        return len(self.vertices[0])

    @property
    def lifted(self) -> tuple[tuple[int, ...], ...]:
        """Cone generators (v_j, 1) of the dual cone."""
        return tuple(v + (1,) for v in self.vertices)


@dataclass(frozen=True)
class VertexCone:
    """Vertex w of the polar polytope with its primitive edge generators."""

    w: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]

    @property
    def mu(self) -> tuple[int, ...]:
        return self.w + (1,)

    @property
    def edge_det(self) -> Fraction:
        return matq_det(self.edges)


@dataclass(frozen=True)
class PolarPolytope:
    m: int
    vertex_cones: tuple[VertexCone, ...]
    facet_normals: tuple[tuple[int, ...], ...]

    @property
    def vertices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(vc.w for vc in self.vertex_cones)

    def contains(self, y, level=1) -> bool:
        return all(_dot(v, y) >= -level for v in self.facet_normals)


@dataclass(frozen=True)
class LatticePointSet:
    level: int
    points: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    detail: str = ""
    offending: tuple = ()


@dataclass
class ValidationReport:
    checks: dict[str, CheckResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def failures(self) -> dict[str, CheckResult]:
        return {k: c for k, c in self.checks.items() if not c.ok}

    def raise_for_failure(self):
        if not self.passed:
            msg = "; ".join(f"{k}: {c.detail}" for k, c in self.failures().items())
            raise ValidationError(msg)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": {
                k: {"ok": c.ok, "detail": c.detail, "offending": [[str(y) for y in x] if isinstance(x, tuple) else x for x in c.offending]}
                for k, c in self.checks.items()
            },
        }


# ---------------------------------------------------------------------------
# Vertex enumeration of {y : <v_j, y> >= -1}


def _null_direction(rows, m: int):
    """A nonzero vector orthogonal to ``rows`` (None if they have full rank)."""
    null = matq_nullspace(list(rows), m)
    return list(null[0]) if null else None


def _recession_ray(normals: tuple[tuple[int, ...], ...]):
    """A nonzero y with <v_j, y> >= 0 for all j, or None when the cone is {0}."""
    m = len(normals[0])
    if matq_rank(normals) < m:
        # a common null vector is a ray
        return _null_direction(normals, m)
    if m == 1:
        for d in ([Fraction(1)], [Fraction(-1)]):
            if all(_dot(v, d) >= 0 for v in normals):
                return d
        return None
    for idx in itertools.combinations(range(len(normals)), m - 1):
        rows = [normals[i] for i in idx]
        if matq_rank(rows) != m - 1:
            continue
        d = _null_direction(rows, m)
        for sign in (1, -1):
            dd = [sign * x for x in d]
            if all(_dot(v, dd) >= 0 for v in normals):
                return dd
    return None


def _polar_vertices(normals):
    m = len(normals[0])
    found = {}
    for idx in itertools.combinations(range(len(normals)), m):
        rows = [normals[i] for i in idx]
        try:
            y = matq_solve(rows, [-1] * m)
        except ZeroDivisionError:
            continue
        if all(_dot(v, y) >= -1 for v in normals):
            found[y] = frozenset(j for j, v in enumerate(normals) if _dot(v, y) == -1)
    return dict(sorted(found.items()))


def _edges_of(vertices: dict, normals) -> dict:
    m = len(normals[0])
    edges = {w: [] for w in vertices}
    ws = list(vertices)
    for a, b in itertools.combinations(ws, 2):
        common = vertices[a] & vertices[b]
        if len(common) >= m - 1 and (m == 1 or matq_rank([normals[j] for j in common]) == m - 1):
            edges[a].append(b)
            edges[b].append(a)
    return edges


def _intvec(w) -> tuple:
    return tuple(int(x) if x.denominator == 1 else x for x in w)


def validate(P: FanoPolytope) -> ValidationReport:
    """Check origin-interior, primitivity, reflexivity and the Delzant condition."""
    report = ValidationReport()
    bad = tuple(j for j, v in enumerate(P.vertices) if gcd(*v) != 1)
    report.checks["primitive"] = CheckResult(
        not bad, "" if not bad else f"non-primitive vertices at indices {list(bad)}", bad
    )
    ray = _recession_ray(P.vertices)
    report.checks["origin_interior"] = CheckResult(
        ray is None,
        "" if ray is None else f"origin not interior; all <v_j, y> >= 0 for y = {[str(x) for x in ray]}",
    )
    if ray is not None:
        report.checks["reflexive"] = CheckResult(False, "skipped: polar is unbounded")
        report.checks["delzant"] = CheckResult(False, "skipped: polar is unbounded")
        return report
    verts = _polar_vertices(P.vertices)
    nonint = tuple(tuple(w) for w in verts if any(x.denominator != 1 for x in w))
    report.checks["reflexive"] = CheckResult(
        not nonint, "" if not nonint else f"non-integer polar vertices {[[str(x) for x in w] for w in nonint]}", nonint
    )
    edges = _edges_of(verts, P.vertices)
    bad_cones = []
    for w, nbrs in edges.items():
        if len(nbrs) != P.m:
            bad_cones.append((_intvec(w), f"{len(nbrs)} edges"))
            continue
        gens = [_primitive_direction(w, u) for u in nbrs]
        det = matq_det(gens)
        if abs(det) != 1:
            bad_cones.append((_intvec(w), f"det {det}"))
    report.checks["delzant"] = CheckResult(
        not bad_cones,
        "" if not bad_cones else "vertex cones not unimodular: " + ", ".join(f"{list(w)} ({why})" for w, why in bad_cones),
        tuple(w for w, _ in bad_cones),
    )
    return report


def _primitive_direction(w, u) -> tuple:
    d = [b - a for a, b in zip(w, u)]
    den = 1
    for x in d:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in d]
    return _primitive(ints)


@lru_cache(maxsize=None)
def polar_dual(P: FanoPolytope) -> PolarPolytope:
    """Vertices and primitive edge generators of {y : <v_j, y> >= -1}.

    Raises :class:`ValidationError` if the polytope is not Fano, reflexive and
    Delzant.  Vertices and edges are sorted lexicographically.
    """
    validate(P).raise_for_failure()
    verts = _polar_vertices(P.vertices)
    edges = _edges_of(verts, P.vertices)
    cones = []
    for w, nbrs in edges.items():
        wi = tuple(int(x) for x in w)
        gens = tuple(sorted(_primitive_direction(w, u) for u in nbrs))
        cones.append(VertexCone(wi, gens))
    return PolarPolytope(P.m, tuple(sorted(cones, key=lambda c: c.w)), P.vertices)


def lattice_points(polar: PolarPolytope, l: int) -> LatticePointSet:
    """All integer points of l * P°, sorted."""
    if l < 0:
        raise DomainError("dilation level must be nonnegative")
    verts = polar.vertices
    lo = [l * min(w[k] for w in verts) for k in range(polar.m)]
    hi = [l * max(w[k] for w in verts) for k in range(polar.m)]
    pts = tuple(
        p
        for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
        if polar.contains(p, l)
    )
    return LatticePointSet(l, pts)


def reeb_margin(P, b) -> Fraction:
    """min_j <mu_j, (b, m+1)> = min_j <w_j, b> + (m + 1).

    Positive iff (b, m+1) lies in the interior of the Reeb slice, i.e. b is
    interior to (m+1) P.  Accepts a :class:`FanoPolytope` or its polar.
    """
    polar = P if isinstance(P, PolarPolytope) else polar_dual(P)
    if isinstance(b[0], float):
        return min(sum(wk * bk for wk, bk in zip(w, b)) for w in polar.vertices) + polar.m + 1
    b = [as_rational(x) for x in b]
    return min(_dot(w, b) for w in polar.vertices) + polar.m + 1


# ---------------------------------------------------------------------------
# Volume by a pulling triangulation


def _affine_dim(points) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return matq_rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def _pulling_simplices(face: frozenset, dim: int, tight: dict, normals) -> list[list]:
    if dim == 0:
        return [[next(iter(face))]]
    apex = min(face)
    face_pts = sorted(face)
    common = frozenset.intersection(*(tight[p] for p in face_pts))
    subfaces = set()
    for j in range(len(normals)):
        if j in common:
            continue
        sub = frozenset(p for p in face_pts if j in tight[p])
        if len(sub) >= dim and apex not in sub and _affine_dim(sorted(sub)) == dim - 1:
            subfaces.add(sub)
    out = []
    for sub in sorted(subfaces, key=sorted):
        for simplex in _pulling_simplices(sub, dim - 1, tight, normals):
            out.append([apex] + simplex)
    return out


def polar_volume(P: FanoPolytope) -> Fraction:
    """Euclidean volume of P° by an exact pulling triangulation."""
    polar = polar_dual(P)
    verts = _polar_vertices(P.vertices)
    tight = {tuple(int(x) for x in w): t for w, t in verts.items()}
    face = frozenset(tight)
    total = Fraction(0)
    for simplex in _pulling_simplices(face, polar.m, tight, P.vertices):
        p0 = simplex[0]
        total += abs(matq_det([[a - b for a, b in zip(p, p0)] for p in simplex[1:]]))
    return total / factorial(polar.m)


def ehrhart_counts(polar: PolarPolytope, levels) -> dict[int, int]:
    return {l: len(lattice_points(polar, l)) for l in levels}


def lattice_automorphisms(P: FanoPolytope) -> list[tuple[tuple[int, ...], ...]]:
    """All integer matrices g (rows) with g * {v_j} = {v_j}, acting on column vectors."""
    m = P.m
    verts = P.vertices
    vset = set(verts)
    basis_idx = next(
        idx for idx in itertools.combinations(range(len(verts)), m) if matq_rank([verts[i] for i in idx]) == m
    )
    B = [verts[i] for i in basis_idx]
    out = []
    for images in itertools.permutations(range(len(verts)), m):
        C = [verts[i] for i in images]
        # g B^T = C^T  =>  rows of g solve B x = (column k of C)
        rows = []
        ok = True
        for k in range(m):
            sol = matq_solve(B, [c[k] for c in C])
            if any(x.denominator != 1 for x in sol):
                ok = False
                break
            rows.append(tuple(int(x) for x in sol))
        if not ok:
            continue
        g = tuple(rows)
        if {tuple(_dot(r, v) for r in g) for v in verts} == vset:
            out.append(g)
    return sorted(set(out))
