"""Exact arithmetic over the rationals.

Scalars are :class:`fractions.Fraction`.  On top of them this module provides
dense univariate polynomials in a line parameter ``s``, normalized rational
functions in ``s``, truncated Laurent series in ``t`` whose coefficients are
such rational functions, Bernoulli numbers, and exact linear algebra
(fraction-free elimination, solving, row spaces).

Everything here is immutable.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, gcd, lcm
from typing import Iterable, Sequence

from .errors import PoleError

Rational = Fraction

__all__ = [
    "Rational",
    "as_rational",
    "qstr",
    "parse_rational",
    "bernoulli_plus",
    "Poly",
    "poly_gcd",
    "RationalFunction",
    "LaurentSeriesRF",
    "rf_add",
    "rf_mul",
    "rf_eval_at",
    "rf_derivative_at_zero",
    "matq_rank",
    "matq_rank_basis",
    "matq_rref",
    "matq_solve",
    "matq_det",
    "matq_nullspace",
    "row_space_equal",
    "primitive_integer_vector",
]


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction (floats are refused)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def qstr(x) -> str:
    """Serialize a rational as ``"p/q"``, or ``"p"`` when q = 1."""
    return str(as_rational(x))


# ---------------------------------------------------------------------------
# Bernoulli numbers


_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli_plus(n: int) -> Fraction:
    """Bernoulli number B_n with the convention B_1 = +1/2 (memoized)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    # sum_{k=0}^{j} C(j+1, k) B_k^+ = j + 1
    for j in range(len(_BERNOULLI), n + 1):
        acc = sum((comb(j + 1, k) * _BERNOULLI[k] for k in range(j)), Fraction(0))
        _BERNOULLI.append((Fraction(j + 1) - acc) / (j + 1))
    return _BERNOULLI[n]


# ---------------------------------------------------------------------------
# Univariate polynomials


class Poly:
    """Dense polynomial in ``s`` with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list) -> "Poly":
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def linear(cls, a, b) -> "Poly":
        """The polynomial a + b*s."""
        return cls((a, b))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __repr__(self):
        return f"Poly({[qstr(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("s" if k == 1 else f"s^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(qstr(c) + ("*" + mono if mono else ""))
        return " + ".join(terms).replace("+ -", "- ")

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_rational(other)
            return Poly._raw([c * x for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw([])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.lead
        if len(rem) - 1 < db:
            return Poly._raw([]), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] / lead
            quot[k] = q
            if q:
                for i, c in enumerate(other.coeffs):
                    rem[k + i] -= q * c
        return Poly._raw(quot), Poly._raw(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.lead
        return Poly._raw([c / lead for c in self.coeffs])

    def __call__(self, s0) -> Fraction:
        s0 = as_rational(s0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * s0 + c
        return acc

    def derivative(self) -> "Poly":
        return Poly._raw([k * c for k, c in enumerate(self.coeffs)][1:])

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


_ONE = Poly.const(1)


# ---------------------------------------------------------------------------
# Rational functions


class RationalFunction:
    """num/den in ``s`` with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = _ONE
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, _ONE
            return
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead = den.lead
        if lead != 1:
            num, den = num * (1 / lead), den * (1 / lead)
        self.num, self.den = num, den

    @classmethod
    def _normalized(cls, num: Poly, den: Poly) -> "RationalFunction":
        f = object.__new__(cls)
        f.num, f.den = num, den
        return f

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls._normalized(Poly.const(c), _ONE)

    @classmethod
    def poly(cls, p: Poly) -> "RationalFunction":
        return cls._normalized(p, _ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction, Poly)):
                other = RationalFunction(other)
            else:
                return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RationalFunction._normalized(-self.num, self.den)

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        if self.is_polynomial() and other.is_polynomial():
            return RationalFunction._normalized(self.num + other.num, _ONE)
        g = poly_gcd(self.den, other.den)
        d1 = self.den // g
        d2 = other.den // g
        return RationalFunction(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return self + (-other)

    def __rsub__(self, other):
        return RationalFunction(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, Poly):
                other = RationalFunction.poly(other)
            else:
                c = as_rational(other)
                if c == 0:
                    return RationalFunction.const(0)
                return RationalFunction._normalized(self.num * c, self.den)
        if self.is_zero() or other.is_zero():
            return RationalFunction.const(0)
        if self.is_polynomial() and other.is_polynomial():
            return RationalFunction._normalized(self.num * other.num, _ONE)
        # cross-cancel keeps the result normalized
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g = poly_gcd(n1, d2)
        if g.degree > 0:
            n1, d2 = n1 // g, d2 // g
        g = poly_gcd(n2, d1)
        if g.degree > 0:
            n2, d1 = n2 // g, d1 // g
        num, den = n1 * n2, d1 * d2
        lead = den.lead
        if lead != 1:
            num, den = num * (1 / lead), den * (1 / lead)
        return RationalFunction._normalized(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return self * other.inverse()

    def has_pole_at(self, s0) -> bool:
        return self.den(s0) == 0

    def __call__(self, s0) -> Fraction:
        return rf_eval_at(self, s0)

    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)


def rf_add(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    return f + g


def rf_mul(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    return f * g


def rf_eval_at(f: RationalFunction, s0) -> Fraction:
    """Exact value f(s0); raises :class:`PoleError` at a pole."""
    s0 = as_rational(s0)
    d = f.den(s0)
    if d == 0:
        raise PoleError(f"pole of {f} at s = {s0}", factor=f.den)
    return f.num(s0) / d


def rf_derivative_at_zero(f: RationalFunction) -> Fraction:
    """f'(0) by the quotient rule on the normalized representation."""
    d0 = f.den.coeff(0)
    if d0 == 0:
        raise PoleError(f"pole of {f} at s = 0 did not cancel", factor=f.den)
    n0, n1 = f.num.coeff(0), f.num.coeff(1)
    d1 = f.den.coeff(1)
    return (n1 * d0 - n0 * d1) / (d0 * d0)


# ---------------------------------------------------------------------------
# Truncated Laurent series in t


class LaurentSeriesRF:
    """Sum_{k=lead_order}^{trunc_order} coeffs[k - lead_order] t^k + O(t^{trunc_order+1}).

    Coefficients are :class:`RationalFunction` in ``s``.  ``trunc_order`` is
    the last exponent known exactly; addition refuses operands with different
    truncation, multiplication reports the order to which its product is valid.
    """

    __slots__ = ("lead_order", "coeffs", "trunc_order")

    def __init__(self, lead_order: int, coeffs: Sequence, trunc_order: int):
        cs = [c if isinstance(c, RationalFunction) else RationalFunction(c) for c in coeffs]
        cs = cs[: max(trunc_order - lead_order + 1, 0)]
        cs += [RationalFunction.const(0)] * (trunc_order - lead_order + 1 - len(cs))
        self.lead_order = lead_order
        self.coeffs = tuple(cs)
        self.trunc_order = trunc_order

    @classmethod
    def zero(cls, trunc_order: int, lead_order: int | None = None) -> "LaurentSeriesRF":
        lo = trunc_order if lead_order is None else lead_order
        return cls(lo, [], trunc_order)

    @classmethod
    def one(cls, trunc_order: int) -> "LaurentSeriesRF":
        return cls(0, [RationalFunction.const(1)], trunc_order)

    @classmethod
    def monomial(cls, c, k: int, trunc_order: int) -> "LaurentSeriesRF":
        return cls(k, [c], trunc_order)

    @classmethod
    def exp_linear(cls, a, b, trunc_order: int) -> "LaurentSeriesRF":
        """Series of exp(t*(a + b*s)) truncated at t^trunc_order."""
        lin = Poly.linear(a, b)
        coeffs = []
        power = _ONE
        for k in range(trunc_order + 1):
            coeffs.append(RationalFunction.poly(power * Fraction(1, factorial(k))))
            power = power * lin
        return cls(0, coeffs, trunc_order)

    def __getitem__(self, k: int) -> RationalFunction:
        if k > self.trunc_order:
            raise IndexError(f"t^{k} lies beyond the truncation order {self.trunc_order}")
        if k < self.lead_order:
            return RationalFunction.const(0)
        return self.coeffs[k - self.lead_order]

    def orders(self) -> range:
        return range(self.lead_order, self.trunc_order + 1)

    def valuation(self) -> int | None:
        for k, c in zip(self.orders(), self.coeffs):
            if not c.is_zero():
                return k
        return None

    def __repr__(self):
        terms = ", ".join(f"t^{k}: {c}" for k, c in zip(self.orders(), self.coeffs))
        return f"LaurentSeriesRF({{{terms}}}, O(t^{self.trunc_order + 1}))"

    def truncate(self, trunc_order: int) -> "LaurentSeriesRF":
        if trunc_order > self.trunc_order:
            raise ValueError("cannot extend a truncated series")
        lo = min(self.lead_order, trunc_order)
        return LaurentSeriesRF(lo, [self[k] for k in range(lo, trunc_order + 1)], trunc_order)

    def _check_trunc(self, other: "LaurentSeriesRF"):
        if self.trunc_order != other.trunc_order:
            raise ValueError(
                f"mixed truncation orders {self.trunc_order} and {other.trunc_order}; "
                "truncate explicitly first"
            )

    def __add__(self, other: "LaurentSeriesRF") -> "LaurentSeriesRF":
        self._check_trunc(other)
        lo = min(self.lead_order, other.lead_order)
        return LaurentSeriesRF(
            lo, [self[k] + other[k] for k in range(lo, self.trunc_order + 1)], self.trunc_order
        )

    def __neg__(self):
        return LaurentSeriesRF(self.lead_order, [-c for c in self.coeffs], self.trunc_order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentSeriesRF":
        return LaurentSeriesRF(self.lead_order, [x * c for x in self.coeffs], self.trunc_order)

    def shift(self, k: int) -> "LaurentSeriesRF":
        """Multiply by t^k."""
        return LaurentSeriesRF(self.lead_order + k, self.coeffs, self.trunc_order + k)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeriesRF):
            return self.scale(other)
        self._check_trunc(other)
        l1, l2 = self.lead_order, other.lead_order
        trunc = self.trunc_order + min(l1, l2)
        lo = l1 + l2
        if trunc < lo:
            return LaurentSeriesRF.zero(trunc)
        out = [RationalFunction.const(0)] * (trunc - lo + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= len(out):
                    break
                if not b.is_zero():
                    out[k] = out[k] + a * b
        return LaurentSeriesRF(lo, out, trunc)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeriesRF":
        """Multiplicative inverse; the result is valid to the order implied by the input."""
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("inverse of a series that vanishes to its truncation order")
        # self = t^v * u(t), u(0) != 0; u known through t^(trunc - v)
        n = self.trunc_order - v
        u = [self[v + k] for k in range(n + 1)]
        inv0 = u[0].inverse()
        w = [inv0]
        for k in range(1, n + 1):
            acc = RationalFunction.const(0)
            for j in range(1, k + 1):
                if not u[j].is_zero():
                    acc = acc + u[j] * w[k - j]
            w.append(-(acc * inv0))
        return LaurentSeriesRF(-v, w, n - v)

    def __truediv__(self, other):
        if not isinstance(other, LaurentSeriesRF):
            return self.scale(Fraction(1) / as_rational(other))
        inv = other.inverse()
        t = min(self.trunc_order, inv.trunc_order)
        return self.truncate(t) * inv.truncate(t)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return LaurentSeriesRF.one(self.trunc_order)
        result = self
        for _ in range(n - 1):
            t = min(result.trunc_order, self.trunc_order)
            result = result.truncate(t) * self.truncate(t)
        return result

    def exp(self) -> "LaurentSeriesRF":
        """exp of a series with positive valuation."""
        n = self.trunc_order
        if any(not self[k].is_zero() for k in range(self.lead_order, min(0, n) + 1)):
            raise ValueError("exp needs a series without constant or polar part")
        x = LaurentSeriesRF(1, [self[k] for k in range(1, n + 1)], n)
        result = term = LaurentSeriesRF.one(n)
        for k in range(1, n + 1):
            term = (term * x).truncate(n).scale(Fraction(1, k))
            result = result + term
        return result

    def at(self, s0) -> dict[int, Fraction]:
        """Evaluate every coefficient at s = s0."""
        return {k: rf_eval_at(c, s0) for k, c in zip(self.orders(), self.coeffs)}


# ---------------------------------------------------------------------------
# Exact linear algebra


def _to_rows(M) -> list[list[Fraction]]:
    return [[as_rational(x) for x in row] for row in M]


def primitive_integer_vector(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector with positive leading entry."""
    v = [as_rational(x) for x in v]
    if all(x == 0 for x in v):
        return tuple(0 for _ in v)
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _integer_rows(M) -> list[list[int]]:
    out = []
    for row in _to_rows(M):
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def matq_rank(M) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    A = _integer_rows(M)
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    rank, prev = 0, 1
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if A[r][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][c]
        for r in range(rank + 1, rows):
            a = A[r][c]
            A[r] = [(p * A[r][k] - a * A[rank][k]) // prev for k in range(cols)]
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def matq_rref(M) -> list[list[Fraction]]:
    """Reduced row echelon form with zero rows dropped."""
    A = _to_rows(M)
    if not A:
        return []
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return A[:r]


def matq_rank_basis(M) -> tuple[int, list[tuple[int, ...]]]:
    """Exact rank and a canonical basis of the row space.

    The basis rows are the rows of the reduced row echelon form, each scaled to
    a primitive integer vector with positive leading entry.
    """
    rank = matq_rank(M)
    basis = [primitive_integer_vector(row) for row in matq_rref(M)]
    assert len(basis) == rank
    return rank, basis


def matq_nullspace(M, ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : M x = 0} for an r x ncols matrix M."""
    R = matq_rref(M) if M else []
    pivots = []
    for row in R:
        pivots.append(next(c for c, x in enumerate(row) if x != 0))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def matq_det(M) -> Fraction:
    A = _to_rows(M)
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        p = A[c][c]
        det *= p
        for r in range(c + 1, n):
            f = A[r][c] / p
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def matq_solve(M, rhs) -> tuple[Fraction, ...]:
    """Solve the square system M x = rhs exactly; raises ZeroDivisionError if singular."""
    A = _to_rows(M)
    n = len(A)
    aug = [row + [as_rational(b)] for row, b in zip(A, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return tuple(row[n] for row in aug)


def row_space_equal(A, B) -> bool:
    """True iff the rational row spaces of A and B coincide."""
    ra, rb = matq_rank(A) if A else 0, matq_rank(B) if B else 0
    if ra != rb:
        return False
    both = list(A) + list(B)
    return (matq_rank(both) if both else 0) == ra
