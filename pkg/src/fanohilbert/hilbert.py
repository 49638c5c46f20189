"""Hilbert series of the Gorenstein cone over P° at exact rational points.

The series of the cone C* = cone(P° x {1}) is represented as the vertex sum

    C(x, C*) = sum_j 1/(1 - x^{mu_j}) * prod_b 1/(1 - x~^{e_{j,b}})

with mu_j = (w_j, 1).  Individual terms blow up on the torus x~ = 1 even
though the sum does not; values there are obtained through
:mod:`fanohilbert.expansion` instead.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, PoleError
from .exactalg import LaurentSeriesRF, as_rational, matq_solve
from .expansion import factor_series
from .polytope import PolarPolytope, lattice_points

__all__ = [
    "SimplicialCone",
    "monomial",
    "simplicial_series_eval",
    "parallelepiped_points",
    "msy_eval",
    "vertex_terms",
    "brion_check",
    "brion_limit_count",
    "series_coefficient_check",
    "sample_points",
    "cone_partial_sum",
]


@dataclass(frozen=True)
class SimplicialCone:
    apex: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]


def monomial(x: Sequence[Fraction], a: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for xi, ai in zip(x, a):
        if ai:
            out *= xi**ai
    return out


def parallelepiped_points(K: SimplicialCone) -> list[tuple[int, ...]]:
    """Integer points of apex + {sum c_i g_i : 0 <= c_i < 1}."""
    n = len(K.apex)
    gens = K.generators
    if len(gens) != n:
        raise DomainError("only full-dimensional simplicial cones are supported")
    corners = [
        [K.apex[k] + sum(g[k] for g, pick in zip(gens, mask) if pick) for k in range(n)]
        for mask in itertools.product((0, 1), repeat=n)
    ]
    lo = [min(c[k] for c in corners) for k in range(n)]
    hi = [max(c[k] for c in corners) for k in range(n)]
    cols = [[g[k] for g in gens] for k in range(n)]
    pts = []
    for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        coords = matq_solve(cols, [pk - ak for pk, ak in zip(p, K.apex)])
        if all(0 <= c < 1 for c in coords):
            pts.append(p)
    return pts


def simplicial_series_eval(K: SimplicialCone, x) -> Fraction:
    """sigma_Pi(x) / prod_i (1 - x^{g_i})."""
    x = [as_rational(v) for v in x]
    den = Fraction(1)
    for g in K.generators:
        f = 1 - monomial(x, g)
        if f == 0:
            raise PoleError(f"factor 1 - x^{g} vanishes", factor=g)
        den *= f
    return sum((monomial(x, p) for p in parallelepiped_points(K)), Fraction(0)) / den


def vertex_terms(polar: PolarPolytope) -> list[dict]:
    """Symbolic shape of the vertex sum: one entry per vertex cone."""
    return [{"w": list(vc.w), "mu": list(vc.mu), "edges": [list(e) for e in vc.edges]} for vc in polar.vertex_cones]


def msy_eval(polar: PolarPolytope, x) -> Fraction:
    """Vertex-sum value of the Hilbert series at a rational point of Q^{m+1}."""
    x = [as_rational(v) for v in x]
    if len(x) != polar.m + 1:
        raise DomainError(f"expected a point in Q^{polar.m + 1}")
    if any(v == 0 for v in x):
        raise DomainError("coordinates must be nonzero")
    total = Fraction(0)
    for j, vc in enumerate(polar.vertex_cones):
        f = 1 - monomial(x, vc.mu)
        if f == 0:
            raise PoleError(f"vertex {j} ({list(vc.w)}): factor 1 - x^mu vanishes", factor=vc.mu)
        term = 1 / f
        for e in vc.edges:
            f = 1 - monomial(x, e)
            if f == 0:
                raise PoleError(f"vertex {j} ({list(vc.w)}): factor 1 - x^{list(e)} vanishes", factor=e)
            term /= f
        total += term
    return total


def _brion_rhs(polar: PolarPolytope, l: int, x) -> Fraction:
    total = Fraction(0)
    for vc in polar.vertex_cones:
        term = monomial(x, [l * wk for wk in vc.w])
        for e in vc.edges:
            f = 1 - monomial(x, e)
            if f == 0:
                raise PoleError(f"factor 1 - x^{list(e)} vanishes at vertex {list(vc.w)}", factor=e)
            term /= f
        total += term
    return total


def brion_check(polar: PolarPolytope, l: int, x) -> bool:
    """Exact comparison of the lattice-point sum over l P° with the vertex-cone sum.

    Raises :class:`PoleError` when the sample point hits a horizontal pole so
    the caller can pick another point.
    """
    if l < 1:
        raise DomainError("l must be positive")
    x = [as_rational(v) for v in x]
    rhs = _brion_rhs(polar, l, x)
    lhs = sum((monomial(x, p) for p in lattice_points(polar, l)), Fraction(0))
    return lhs == rhs


def brion_limit_count(polar: PolarPolytope, l: int, direction=None) -> Fraction:
    """Number of lattice points of l P° from the vertex sum in the limit x~ -> 1.

    Substitutes x~ = exp(-t c) for a generic integer direction c and takes the
    t^0 coefficient of the Laurent expansion; each vertex term has a pole of
    order m at t = 0, which cancels in the sum.
    """
    m = polar.m
    edges = [e for vc in polar.vertex_cones for e in vc.edges]
    if direction is None:
        rng = random.Random(0)
        while True:
            direction = [rng.randint(-7, 7) for _ in range(m)]
            if all(sum(a * b for a, b in zip(e, direction)) != 0 for e in edges):
                break
    # t^m * term is a power series; its t^m coefficient is the t^0 coefficient of the term
    total = LaurentSeriesRF.zero(m, 0)
    for vc in polar.vertex_cones:
        term = LaurentSeriesRF.exp_linear(-l * sum(a * b for a, b in zip(vc.w, direction)), 0, m)
        for e in vc.edges:
            ec = sum(a * b for a, b in zip(e, direction))
            if ec == 0:
                raise DomainError(f"direction {direction} is orthogonal to edge {list(e)}")
            term = term * factor_series(ec, 0, m - 1).shift(1).truncate(m)
        total = total + term
    return total[m].num.coeff(0)


def series_coefficient_check(polar: PolarPolytope, l: int, n_points: int = 3, seed: int = 0) -> bool:
    """Coefficient of x_{m+1}^l: direct lattice count versus the vertex sum.

    The vertex sum is checked against the monomial sum at generic rational
    points and its x~ -> 1 limit is compared with the number of points.
    """
    if l == 0:
        return len(lattice_points(polar, 0)) == 1
    for x in sample_points(polar.m, n_points, seed, avoid=[e for vc in polar.vertex_cones for e in vc.edges]):
        if not brion_check(polar, l, x):
            return False
    return brion_limit_count(polar, l) == len(lattice_points(polar, l))


_SAMPLE_VALUES = [Fraction(1, 2), Fraction(2), Fraction(3), Fraction(1, 3), Fraction(5, 2)]


def sample_points(dim: int, count: int, seed: int = 0, avoid=()) -> list[tuple[Fraction, ...]]:
    """Reproducible nonzero rational points, rejecting those where 1 - x^e = 0 for e in ``avoid``."""
    rng = random.Random(seed)
    values = _SAMPLE_VALUES + [-v for v in _SAMPLE_VALUES]
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 10000:
            raise DomainError("could not find enough non-pole sample points")
        x = tuple(rng.choice(values) for _ in range(dim))
        if any(monomial(x, e) == 1 for e in avoid):
            continue
        if x not in out:
            out.append(x)
    return out


def cone_partial_sum(polar: PolarPolytope, x, max_height: int) -> Fraction:
    """sum of x^a over lattice points a of C* with height a_{m+1} <= max_height."""
    x = [as_rational(v) for v in x]
    total = Fraction(0)
    for l in range(max_height + 1):
        xl = x[-1] ** l
        total += xl * sum((monomial(x[:-1], p) for p in lattice_points(polar, l)), Fraction(0))
    return total
