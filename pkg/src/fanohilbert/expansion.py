"""Laurent expansion of C(exp(-t b), C*) at t = 0 along rational lines.

For a Reeb vector b = (b~, m+1) and a tangent direction c = (c~, 0) the
vertex sum is restricted to the line b(s) = b + s c.  Every factor
1/(1 - exp(-t <lambda, b(s)>)) expands as

    1/(t (A + B s)) + 1/2 + (A + B s) t / 12 + ...,   A = <lambda, b>, B = <lambda, c>,

so each Laurent coefficient of the vertex sum is a univariate rational
function of ``s``.  Single vertex terms may have poles at s = 0 (when some
edge is orthogonal to b~); those poles cancel in the sum.  Values C_i(b) are
the coefficients at s = 0 and their derivatives give directional derivatives
of C_i, from which gradients follow by an exact linear solve.
"""
from __future__ import annotations

import ast
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .errors import ConsistencyError, DomainError
from .exactalg import (
    LaurentSeriesRF,
    Poly,
    RationalFunction,
    as_rational,
    bernoulli_plus,
    matq_det,
    matq_rank_basis,
    matq_solve,
    rf_derivative_at_zero,
    rf_eval_at,
)
from .polytope import PolarPolytope, reeb_margin

__all__ = [
    "ReebVector",
    "factor_series",
    "line_series",
    "generic_directions",
    "CoefficientTable",
    "GradientTable",
    "SpanReport",
    "coefficient_data",
    "coefficient_values",
    "coefficient_gradients",
    "span_report",
    "series_from_expression",
    "GeneratingCheck",
    "gradient_generating_check",
    "DEFAULT_ORDER",
]

DEFAULT_ORDER = 1


@dataclass(frozen=True)
class ReebVector:
    """b = (b~, m+1); only the free part b~ is stored."""

    free: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(as_rational(x) for x in self.free))

    @classmethod
    def origin(cls, m: int) -> "ReebVector":
        """The regular Reeb vector (0, ..., 0, m+1)."""
        return cls((0,) * m)

    @property
    def m(self) -> int:
        return len(self.free)

    @property
    def full(self) -> tuple[Fraction, ...]:
        return self.free + (Fraction(self.m + 1),)

    def shifted(self, direction, h) -> "ReebVector":
        h = as_rational(h)
        return ReebVector(tuple(b + h * as_rational(c) for b, c in zip(self.free, direction)))


def _as_reeb(b, m: int) -> ReebVector:
    if b is None:
        return ReebVector.origin(m)
    if not isinstance(b, ReebVector):
        b = ReebVector(tuple(b))
    if b.m != m:
        raise DomainError(f"Reeb vector has {b.m} free coordinates, polytope dimension is {m}")
    return b


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def factor_series(A, B, N: int) -> LaurentSeriesRF:
    """1/(1 - exp(-t (A + B s))) as a Laurent series in t truncated at t^N.

    The coefficient of t^k is B+_{k+1} (A + B s)^k / (k+1)!, with the t^-1
    coefficient 1/(A + B s).
    """
    A, B = as_rational(A), as_rational(B)
    if A == 0 and B == 0:
        raise DomainError("factor 1/(1 - exp(0)) has no Laurent expansion")
    if N < -1:
        raise DomainError("truncation order must be at least -1")
    lin = Poly.linear(A, B)
    coeffs = [RationalFunction(Poly.const(1), lin)]
    power = Poly.const(1)
    for k in range(N + 1):
        coeffs.append(RationalFunction.poly(power * (bernoulli_plus(k + 1) / factorial(k + 1))))
        power = power * lin
    return LaurentSeriesRF(-1, coeffs, N)


def _todd_poly_series(lin: Poly, n: int) -> list[Poly]:
    """Coefficients of u/(1 - exp(-u)) with u = t*lin, through t^n."""
    out = []
    power = Poly.const(1)
    for k in range(n + 1):
        out.append(power * (bernoulli_plus(k) / factorial(k)))
        power = power * lin
    return out


def _poly_series_mul(a: list[Poly], b: list[Poly], n: int) -> list[Poly]:
    out = [Poly.const(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x.is_zero():
            continue
        for j, y in enumerate(b[: n + 1 - i]):
            out[i + j] = out[i + j] + x * y
    return out


def _vertex_line_series(vc, b_full, c_full, N: int) -> LaurentSeriesRF:
    m = len(vc.w)
    lambdas = [vc.mu] + [e + (0,) for e in vc.edges]
    n = N + m + 1  # coefficients t^0..t^n of the Todd product
    den = Poly.const(1)
    prod = [Poly.const(1)]
    for lam in lambdas:
        A, B = _dot(lam, b_full), _dot(lam, c_full)
        if A == 0 and B == 0:
            raise DomainError(f"direction is not generic: <{list(lam)}, b + s c> vanishes identically")
        lin = Poly.linear(A, B)
        den = den * lin
        prod = _poly_series_mul(prod, _todd_poly_series(lin, n), n)
    prod += [Poly.const(0)] * (n + 1 - len(prod))
    coeffs = [RationalFunction(p, den) for p in prod]
    return LaurentSeriesRF(-(m + 1), coeffs, N)


def line_series(polar: PolarPolytope, b, c, N: int = DEFAULT_ORDER, check_poles: bool = True) -> LaurentSeriesRF:
    """Vertex sum of C(exp(-t (b + s c)), C*) expanded in t through t^N.

    Raises :class:`ConsistencyError` if any coefficient keeps a pole at s = 0.
    """
    m = polar.m
    b = _as_reeb(b, m)
    c = tuple(as_rational(x) for x in c)
    if len(c) != m:
        raise DomainError("direction has the wrong dimension")
    b_full, c_full = b.full, c + (Fraction(0),)
    total = LaurentSeriesRF.zero(N, -(m + 1))
    for vc in polar.vertex_cones:
        total = total + _vertex_line_series(vc, b_full, c_full, N)
    if check_poles:
        for k, coeff in zip(total.orders(), total.coeffs):
            if coeff.has_pole_at(0):
                raise ConsistencyError(
                    f"coefficient of t^{k} keeps a pole at s = 0 (denominator {coeff.den}); "
                    "invalid polytope data or non-generic direction"
                )
    return total


def _is_generic(polar: PolarPolytope, b: ReebVector, c) -> bool:
    # <mu_j, b> > 0 on the slice interior, so only edges orthogonal to b~ matter
    for vc in polar.vertex_cones:
        for e in vc.edges:
            if _dot(e, b.free) == 0 and _dot(e, c) == 0:
                return False
    return True


def generic_directions(polar: PolarPolytope, b=None, count=None, seed: int = 0) -> list[tuple[int, ...]]:
    """``count`` (default m) integer directions, generic for (P°, b), spanning R^m when count = m."""
    m = polar.m
    b = _as_reeb(b, m)
    count = m if count is None else count
    rng = random.Random(seed)
    for _ in range(10000):
        dirs = []
        while len(dirs) < count:
            c = tuple(rng.randint(-4, 4) for _ in range(m))
            if any(c) and _is_generic(polar, b, c):
                dirs.append(c)
        if count != m or matq_det(dirs) != 0:
            return dirs
    raise DomainError("could not find generic directions")


@dataclass
class CoefficientTable:
    point: ReebVector
    values: dict[int, Fraction]

    def __getitem__(self, i):
        return self.values[i]


@dataclass
class GradientTable:
    point: ReebVector
    gradients: dict[int, tuple[Fraction, ...]]

    def __getitem__(self, i):
        return self.gradients[i]

    @property
    def orders(self):
        return sorted(self.gradients)


def _values_and_derivatives(polar, b, dirs, N):
    values = None
    derivs = []
    for c in dirs:
        ser = line_series(polar, b, c, N)
        vals = {k: rf_eval_at(coeff, 0) for k, coeff in zip(ser.orders(), ser.coeffs)}
        if values is None:
            values = vals
        elif vals != values:
            raise ConsistencyError(f"coefficient values depend on the direction ({c})")
        derivs.append({k: rf_derivative_at_zero(coeff) for k, coeff in zip(ser.orders(), ser.coeffs)})
    return values, derivs


def coefficient_data(
    polar: PolarPolytope, b=None, N: int = DEFAULT_ORDER, seed: int = 0, verify: bool = True
) -> tuple[CoefficientTable, GradientTable]:
    """Exact C_i(b) and grad C_i(b) for i = -(m+1) .. N.

    With ``verify`` the gradients are recomputed from an independent set of
    directions and any disagreement raises :class:`ConsistencyError`.
    """
    m = polar.m
    b = _as_reeb(b, m)
    if reeb_margin(polar, b.free) <= 0:
        raise DomainError(f"Reeb vector {[str(x) for x in b.free]} is not interior to the slice")
    dirs = generic_directions(polar, b, m, seed)
    values, derivs = _values_and_derivatives(polar, b, dirs, N)
    grads = _solve_gradients(dirs, derivs, values)
    if verify:
        dirs2 = generic_directions(polar, b, m, seed + 7919)
        values2, derivs2 = _values_and_derivatives(polar, b, dirs2, N)
        if values2 != values:
            raise ConsistencyError("coefficient values depend on the direction set")
        if _solve_gradients(dirs2, derivs2, values2) != grads:
            raise ConsistencyError("gradients depend on the direction set")
    return CoefficientTable(b, values), GradientTable(b, grads)


def _solve_gradients(dirs, derivs, values):
    return {i: matq_solve(dirs, [d[i] for d in derivs]) for i in values}


def coefficient_values(polar: PolarPolytope, b=None, N: int = DEFAULT_ORDER, seed: int = 0) -> CoefficientTable:
    """C_i(b) at s = 0 of the line series, cross-checked with a second direction."""
    m = polar.m
    b = _as_reeb(b, m)
    if reeb_margin(polar, b.free) <= 0:
        raise DomainError(f"Reeb vector {[str(x) for x in b.free]} is not interior to the slice")
    dirs = generic_directions(polar, b, 2, seed)
    values, _ = _values_and_derivatives(polar, b, dirs, N)
    return CoefficientTable(b, values)


def coefficient_gradients(
    polar: PolarPolytope, b=None, N: int = DEFAULT_ORDER, seed: int = 0, verify: bool = True
) -> GradientTable:
    return coefficient_data(polar, b, N, seed, verify)[1]


@dataclass
class SpanReport:
    rank: int
    basis: list[tuple[int, ...]]
    membership: dict[int, tuple[Fraction, ...]] = field(default_factory=dict)


def span_report(G: GradientTable, i_range: Iterable[int] | None = None) -> SpanReport:
    """Exact rank of the gradient span, its canonical basis and each gradient's coordinates in it."""
    orders = sorted(G.gradients) if i_range is None else list(i_range)
    rows = [G.gradients[i] for i in orders]
    rank, basis = matq_rank_basis(rows)
    pivots = [next(k for k, x in enumerate(v) if x != 0) for v in basis]
    membership = {}
    for i, g in zip(orders, rows):
        coords = tuple(Fraction(g[p]) / v[p] for v, p in zip(basis, pivots))
        recon = [sum((c * v[k] for c, v in zip(coords, basis)), Fraction(0)) for k in range(len(g))]
        if recon != list(g):
            raise ConsistencyError(f"gradient {i} is not in the computed span")
        membership[i] = coords
    return SpanReport(rank, basis, membership)


# ---------------------------------------------------------------------------
# Closed-form generating functions in exp(t)

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def series_from_expression(text: str, N: int, padding: int = 16) -> LaurentSeriesRF:
    """Laurent expansion in t of an expression in ``t`` and ``exp(...)``.

    Accepts numbers, ``t``, ``exp(expr)``, ``+ - * /`` and integer powers,
    e.g. ``-t*exp(8*t)*(exp(4*t)+3)*(3*exp(4*t)+1)/((exp(2*t)-1)**5*(exp(2*t)+1)**5)``.
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    work = N + padding
    while True:
        result = _eval_node(tree.body, work)
        if not isinstance(result, LaurentSeriesRF):
            result = LaurentSeriesRF(0, [result], N)
        if result.trunc_order >= N:
            return result.truncate(N)
        work += padding


def _align(a, b, work):
    if not isinstance(a, LaurentSeriesRF):
        a = LaurentSeriesRF(0, [a], work if not isinstance(b, LaurentSeriesRF) else b.trunc_order)
    if not isinstance(b, LaurentSeriesRF):
        b = LaurentSeriesRF(0, [b], a.trunc_order)
    t = min(a.trunc_order, b.trunc_order)
    return a.truncate(t), b.truncate(t)


def _eval_node(node, work):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        if isinstance(node.value, float):
            return Fraction(str(node.value))
        return Fraction(node.value)
    if isinstance(node, ast.Name) and node.id == "t":
        return LaurentSeriesRF(1, [1], work)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, work)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "exp" and len(node.args) == 1:
        arg = _eval_node(node.args[0], work)
        if not isinstance(arg, LaurentSeriesRF):
            if arg == 0:
                return Fraction(1)
            raise DomainError("exp of a nonzero constant is not rational")
        return arg.exp()
    if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
        if isinstance(node.op, ast.Pow):
            base = _eval_node(node.left, work)
            expo = _eval_node(node.right, work)
            if isinstance(expo, LaurentSeriesRF) or expo.denominator != 1:
                raise DomainError("only integer powers are supported")
            return base ** int(expo)
        left = _eval_node(node.left, work)
        right = _eval_node(node.right, work)
        if not isinstance(left, LaurentSeriesRF) and not isinstance(right, LaurentSeriesRF):
            return {ast.Add: left + right, ast.Sub: left - right, ast.Mult: left * right}.get(
                type(node.op), left / right if isinstance(node.op, ast.Div) else None
            )
        if isinstance(node.op, ast.Mult) and not isinstance(right, LaurentSeriesRF):
            return left.scale(right)
        if isinstance(node.op, ast.Mult) and not isinstance(left, LaurentSeriesRF):
            return right.scale(left)
        if isinstance(node.op, ast.Div) and not isinstance(right, LaurentSeriesRF):
            return left.scale(1 / right)
        a, b = _align(left, right, work)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        return a / b
    raise DomainError(f"unsupported expression element: {ast.dump(node)}")


@dataclass
class GeneratingCheck:
    ok: bool
    first_mismatch: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def gradient_generating_check(
    polar: PolarPolytope,
    q_expr: str,
    direction: Sequence,
    N: int = DEFAULT_ORDER,
    components: Sequence[int] | None = None,
    gradients: GradientTable | None = None,
) -> GeneratingCheck:
    """Compare the gradient table at the regular Reeb vector with a closed form.

    The claim checked is  grad C_i(xi_0)[k] = [t^i] q(t) * direction[k]  for
    every order i in -(m+1) .. N and every coordinate k in ``components``.
    """
    m = polar.m
    direction = [as_rational(x) for x in direction]
    components = range(m) if components is None else components
    if gradients is None:
        gradients = coefficient_gradients(polar, None, N)
    q = series_from_expression(q_expr, N)
    for i in range(-(m + 1), N + 1):
        qi = q[i].num.coeff(0)
        for k in components:
            expected = qi * direction[k]
            got = gradients[i][k]
            if expected != got:
                return GeneratingCheck(
                    False, i, f"order {i}, component {k}: closed form gives {expected}, computed {got}"
                )
    return GeneratingCheck(True)
