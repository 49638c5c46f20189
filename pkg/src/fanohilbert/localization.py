"""Fixed-point (localization) evaluation of c1^{m+1} and c1^2 c2 integrals.

Each fixed point carries m weights, linear forms in the torus parameters.  The
integrals are sums over fixed points of a symmetric function of the weights
divided by their product.  The results are linear forms; they are recovered by
exact interpolation at random rational parameter points and certified on
held-out points.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Callable, Sequence

from .errors import ConsistencyError, DomainError
from .exactalg import as_rational, matq_rank, qstr, row_space_equal
from .expansion import SpanReport
from .polytope import PolarPolytope

__all__ = [
    "LinearForm",
    "FixedPoint",
    "FixedPointSet",
    "LocalizationResult",
    "c1_top_integrand",
    "c1sq_c2_integrand",
    "c1_top_integral",
    "c1sq_c2_integral",
    "derived_fixed_points",
    "load_fixed_points",
    "localize",
    "span_compare",
]

_GREEK = ("alpha", "beta", "gamma", "delta", "epsilon")


@dataclass(frozen=True)
class LinearForm:
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(as_rational(c) for c in self.coefficients))

    @property
    def m(self) -> int:
        return len(self.coefficients)

    def __call__(self, a) -> Fraction:
        return sum((c * x for c, x in zip(self.coefficients, a)), Fraction(0))

    def __neg__(self):
        return LinearForm(tuple(-c for c in self.coefficients))

    def __add__(self, other):
        return LinearForm(tuple(x + y for x, y in zip(self.coefficients, other.coefficients)))

    def __mul__(self, k):
        return LinearForm(tuple(k * c for c in self.coefficients))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def to_json(self) -> list[str]:
        return [qstr(c) for c in self.coefficients]

    def format(self, latex: bool = False) -> str:
        names = [("\\" + g if latex else g) for g in _GREEK] if self.m <= len(_GREEK) else None
        if names is None:
            names = [f"a_{{{k + 1}}}" if latex else f"a{k + 1}" for k in range(self.m)]
        parts = []
        for c, name in zip(self.coefficients, names):
            if c == 0:
                continue
            mag = abs(c)
            if latex and mag.denominator != 1:
                coef = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            else:
                coef = "" if mag == 1 else str(mag)
            sep = "" if latex or not coef else "*"
            term = f"{coef}{sep}{name}"
            parts.append(("-" if c < 0 else "+") + term)
        if not parts:
            return "0"
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class FixedPoint:
    weights: tuple[LinearForm, ...]

    def at(self, a) -> list[Fraction]:
        return [w(a) for w in self.weights]


@dataclass(frozen=True)
class FixedPointSet:
    points: tuple[FixedPoint, ...]
    source: str = "user"

    @property
    def m(self) -> int:
        return self.points[0].weights[0].m

    def negated(self) -> "FixedPointSet":
        return FixedPointSet(tuple(FixedPoint(tuple(-w for w in p.weights)) for p in self.points), self.source)

    def to_json(self) -> dict:
        return {"dim": self.m, "points": [[w.to_json() for w in p.weights] for p in self.points]}


@dataclass
class LocalizationResult:
    c1_top: LinearForm
    c1sq_c2: LinearForm | None = None

    def forms(self) -> list[LinearForm]:
        return [f for f in (self.c1_top, self.c1sq_c2) if f is not None]

    @property
    def rank(self) -> int:
        return matq_rank([f.coefficients for f in self.forms()])


def c1_top_integrand(weights: Sequence[Fraction]) -> Fraction:
    """(sum w)^{m+1} / prod w."""
    return sum(weights) ** (len(weights) + 1) / prod(weights)


def _e2(weights) -> Fraction:
    return sum((weights[i] * weights[j] for i in range(len(weights)) for j in range(i + 1, len(weights))), Fraction(0))


def c1sq_c2_integrand(weights: Sequence[Fraction]) -> Fraction:
    """(sum w)^2 e2(w) / prod w."""
    return sum(weights) ** 2 * _e2(weights) / prod(weights)


def _sample(fps: FixedPointSet, integrand: Callable, a) -> Fraction:
    total = Fraction(0)
    for p in fps.points:
        w = p.at(a)
        if any(x == 0 for x in w):
            raise ZeroDivisionError
        total += integrand(w)
    return total


def _fit_linear_form(fps: FixedPointSet, integrand: Callable, seed: int = 0) -> LinearForm:
    """Interpolate an affine form through m+2 points, require a zero constant, verify on 2 more."""
    m = fps.m
    rng = random.Random(seed)
    pts, vals = [], []
    while len(pts) < m + 4:
        a = tuple(Fraction(rng.randint(-60, 60), rng.randint(1, 13)) for _ in range(m))
        try:
            v = _sample(fps, integrand, a)
        except ZeroDivisionError:
            continue
        pts.append(a)
        vals.append(v)
    # first m+1 points determine the affine form, the next one overdetermines it
    fit_rows = [(Fraction(1),) + a for a in pts[: m + 2]]
    from .exactalg import matq_rref

    aug = [list(r) + [v] for r, v in zip(fit_rows, vals[: m + 2])]
    R = matq_rref(aug)
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in R) or len(R) != m + 1:
        raise DomainError("fixed-point sum is not a linear form (inconsistent interpolation)")
    coef = [row[-1] for row in R]
    const, lin = coef[0], LinearForm(tuple(coef[1:]))
    if const != 0:
        raise DomainError(f"fixed-point sum has constant term {const}; not a linear form")
    for a, v in zip(pts[m + 2 :], vals[m + 2 :]):
        if lin(a) != v:
            raise DomainError("fixed-point sum is not a linear form (held-out residual)")
    return lin


def c1_top_integral(fps: FixedPointSet, seed: int = 0) -> LinearForm:
    return _fit_linear_form(fps, c1_top_integrand, seed)


def c1sq_c2_integral(fps: FixedPointSet, seed: int = 0) -> LinearForm:
    return _fit_linear_form(fps, c1sq_c2_integrand, seed)


def localize(fps: FixedPointSet, seed: int = 0) -> LocalizationResult:
    """Both integrals; c1^2 c2 only in dimension 3."""
    top = c1_top_integral(fps, seed)
    mixed = c1sq_c2_integral(fps, seed) if fps.m == 3 else None
    return LocalizationResult(top, mixed)


def derived_fixed_points(polar: PolarPolytope) -> FixedPointSet:
    """One fixed point per vertex of P°, with weights <e_{j,b}, a>."""
    return FixedPointSet(
        tuple(FixedPoint(tuple(LinearForm(e) for e in vc.edges)) for vc in polar.vertex_cones),
        source="derived",
    )


def load_fixed_points(data) -> FixedPointSet:
    """Parse ``{"dim": m, "points": [[[c1..cm], ...], ...]}`` (a dict, JSON text or path)."""
    if isinstance(data, str):
        text = data
        if not data.lstrip().startswith("{"):
            with open(data) as fh:
                text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"fixed-point data is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("points"), list):
        raise DomainError('fixed-point data needs a "points" list')
    pts = []
    for k, p in enumerate(data["points"]):
        try:
            weights = tuple(LinearForm(tuple(as_rational(c) for c in w)) for w in p)
        except (TypeError, ValueError, ZeroDivisionError):
            raise DomainError(f"fixed point {k}: weights must be lists of integers or rational strings") from None
        pts.append(FixedPoint(weights))
    fps = FixedPointSet(tuple(pts), "user")
    m = data.get("dim", fps.m)
    for k, p in enumerate(fps.points):
        if len(p.weights) != m or any(w.m != m for w in p.weights):
            raise DomainError(f"fixed point {k} does not carry {m} weights in {m} parameters")
    return fps


def span_compare(L: LocalizationResult, G: SpanReport) -> bool:
    """Exact equality of span{localization forms} and the gradient span."""
    forms = [f.coefficients for f in L.forms() if not f.is_zero()]
    basis = [tuple(Fraction(x) for x in v) for v in G.basis]
    if not forms and not basis:
        return True
    return row_space_equal(forms, basis)
