"""Exact rational, polynomial, power-series and Laurent arithmetic.

Everything here is pure and exact: coefficients are `fractions.Fraction`
(plain ints are accepted and mix freely), equality is decidable, and no
operation ever rounds.  The higher-level modules build Hilbert series out
of these primitives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DenominatorVanishesAtZero, ReconstructionMismatch

#: Exact rational scalar used throughout (always stored in lowest terms,
#: denominator > 0 -- guaranteed by fractions.Fraction itself).
BigRational = Fraction

Scalar = Union[int, Fraction]

#: Default number of extra verified coefficients in rational reconstruction.
DEFAULT_SLACK = 16


def _strip(coeffs: Sequence[Scalar]) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class QPolynomial:
    """Dense univariate polynomial over Q, coefficients indexed by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs = _strip(list(coeffs))

    @staticmethod
    def monomial(degree: int, coeff: Scalar = 1) -> "QPolynomial":
        return QPolynomial([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial having degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QPolynomial([other])
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPolynomial({list(self.coeffs)!r})"

    def __getitem__(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPolynomial([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPolynomial([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QPolynomial([c * other for c in self.coeffs])
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __call__(self, x: Scalar) -> Scalar:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k: int) -> "QPolynomial":
        """Multiply by x**k."""
        if self.is_zero():
            return self
        return QPolynomial((0,) * k + self.coeffs)

    def valuation(self) -> int:
        """Order of vanishing at 0 (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def divmod(self, other: "QPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return QPolynomial(), self
        quo = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        db = other.degree
        for k in range(dq, -1, -1):
            c = rem[k + db]
            if c:
                q = Fraction(c, 1) / lead
                quo[k] = q
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return QPolynomial(quo), QPolynomial(rem)

    def exact_div(self, other: "QPolynomial") -> "QPolynomial":
        quo, rem = self.divmod(other)
        if not rem.is_zero():
            raise ValueError("polynomial division is not exact")
        return quo

    def gcd(self, other: "QPolynomial") -> "QPolynomial":
        """Monic gcd by the Euclidean algorithm."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a * Fraction(1, 1) * (Fraction(1) / a.coeffs[-1])

    def compose_one_minus(self) -> "QPolynomial":
        """Return p(1 - u) as a polynomial in u."""
        acc = QPolynomial()
        one_minus_u = QPolynomial([1, -1])
        for c in reversed(self.coeffs):
            acc = acc * one_minus_u + c
        return acc

    def is_palindromic(self) -> bool:
        c = self.coeffs
        return bool(c) and c == tuple(reversed(c))


def poly_mul(a: QPolynomial, b: QPolynomial) -> QPolynomial:
    """Exact product; degree adds for nonzero inputs."""
    if a.is_zero() or b.is_zero():
        return QPolynomial()
    out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ca in enumerate(a.coeffs):
        if ca:
            for j, cb in enumerate(b.coeffs):
                if cb:
                    out[i + j] += ca * cb
    return QPolynomial(out)


ONE = QPolynomial([1])


@dataclass(frozen=True)
class FactoredDenominator:
    """A denominator kept as x**shift * prod (1-x^m)^e * other.

    The cyclotomic part is the multiset {(m, e)}; `other` is an arbitrary
    extra polynomial factor with unit constant term.
    """

    factors: tuple  # sorted tuple of (m, e) pairs, m >= 1, e >= 1
    monomial_shift: int = 0
    other: QPolynomial = field(default_factory=lambda: ONE)

    @staticmethod
    def from_pairs(pairs: Iterable, shift: int = 0,
                   other: QPolynomial = ONE) -> "FactoredDenominator":
        acc: dict = {}
        for m, e in pairs:
            if m < 1 or e < 1:
                raise ValueError("cyclotomic factors need m >= 1, e >= 1")
            acc[m] = acc.get(m, 0) + e
        return FactoredDenominator(tuple(sorted(acc.items())), shift, other)

    @property
    def degree(self) -> int:
        return (self.monomial_shift + sum(m * e for m, e in self.factors)
                + self.other.degree)

    def expand(self) -> QPolynomial:
        poly = self.other
        for m, e in self.factors:
            f = QPolynomial([1] + [0] * (m - 1) + [-1])
            for _ in range(e):
                poly = poly * f
        return poly.shift(self.monomial_shift)

    def multiply_into(self, coeffs: Sequence[Scalar]) -> list:
        """Multiply a coefficient list by the expanded denominator.

        Works in place on a copy; the x**shift just shifts indices.
        """
        out = list(coeffs)
        n = len(out)
        for m, e in self.factors:
            for _ in range(e):
                # multiply by (1 - x^m): c[k] -= c[k-m], top down
                for k in range(n - 1, m - 1, -1):
                    out[k] -= out[k - m]
        if self.other != ONE:
            full = poly_mul(QPolynomial(out), self.other).coeffs
            out = list(full[:n]) + [0] * (n - len(full))
        if self.monomial_shift:
            out = [0] * self.monomial_shift + out
        return out


Denominator = Union[QPolynomial, FactoredDenominator]


@dataclass(frozen=True)
class RationalFunction:
    """Exact quotient of polynomials; denominator may stay factored."""

    numerator: QPolynomial
    denominator: Denominator

    def __post_init__(self):
        den = self.denominator
        if isinstance(den, QPolynomial) and den.is_zero():
            raise ZeroDivisionError("zero denominator")

    @property
    def expanded_denominator(self) -> QPolynomial:
        den = self.denominator
        return den.expand() if isinstance(den, FactoredDenominator) else den

    def reduce(self) -> "RationalFunction":
        """Lowest terms with denominator normalized to constant term 1
        (or monic if the constant term vanishes)."""
        num, den = self.numerator, self.expanded_denominator
        if num.is_zero():
            return RationalFunction(num, ONE)
        v = min(num.valuation(), den.valuation())
        if v:
            num = QPolynomial(num.coeffs[v:])
            den = QPolynomial(den.coeffs[v:])
        g = num.gcd(den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        scale = Fraction(1) / (den.coeffs[0] if den.coeffs[0] else den.coeffs[-1])
        return RationalFunction(num * scale, den * scale)

    def equals(self, other: "RationalFunction") -> bool:
        """Equality as rational functions (cross multiplication)."""
        return (self.numerator * other.expanded_denominator
                == other.numerator * self.expanded_denominator)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        da, db = self.expanded_denominator, other.expanded_denominator
        return RationalFunction(self.numerator * db + other.numerator * da,
                                da * db)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.numerator * other, self.denominator)
        return RationalFunction(self.numerator * other.numerator,
                                self.expanded_denominator
                                * other.expanded_denominator)

    __rmul__ = __mul__

    def series(self, order: int) -> "TruncatedSeries":
        return series_of_rational(self, order)


@dataclass(frozen=True)
class TruncatedSeries:
    """Exact power-series prefix: coefficients for degrees 0..order."""

    coefficients: tuple
    order: int

    def __post_init__(self):
        if len(self.coefficients) != self.order + 1:
            raise ValueError("coefficient count must be order + 1")

    def __getitem__(self, k: int) -> Scalar:
        return self.coefficients[k]

    def multisect(self, a: int) -> "TruncatedSeries":
        """Keep every a-th coefficient: U_a on the known prefix."""
        kept = self.coefficients[::a]
        return TruncatedSeries(tuple(kept), len(kept) - 1)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            tuple(self.coefficients[k] + other.coefficients[k]
                  for k in range(n + 1)), n)

    def scaled(self, c: Scalar) -> "TruncatedSeries":
        return TruncatedSeries(tuple(x * c for x in self.coefficients),
                               self.order)


@dataclass(frozen=True)
class LaurentExpansion:
    """Sum_{k=0..K} gamma_k (1-x)^(k - pole_order)."""

    pole_order: int
    coefficients: tuple

    @property
    def expansion_length(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> Scalar:
        return self.coefficients[k]


def series_div(num: Sequence[Scalar], den: Sequence[Scalar], order: int) -> list:
    """Coefficients 0..order of num/den; den[0] must be nonzero."""
    if not den or not den[0]:
        raise DenominatorVanishesAtZero("denominator has zero constant term")
    inv0 = Fraction(1) / Fraction(den[0])
    out = []
    for k in range(order + 1):
        acc = Fraction(num[k]) if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            if den[j]:
                acc -= den[j] * out[k - j]
        out.append(acc * inv0)
    return out


def _expand_factored(num: QPolynomial, den: FactoredDenominator,
                     order: int) -> list:
    shift = den.monomial_shift
    coeffs = list(num.coeffs)
    if shift:
        if num.valuation() < shift and not num.is_zero():
            raise DenominatorVanishesAtZero(
                "monomial shift in denominator exceeds numerator valuation")
        coeffs = coeffs[shift:]
    coeffs = coeffs[:order + 1]
    coeffs += [0] * (order + 1 - len(coeffs))
    for m, e in den.factors:
        for _ in range(e):
            # divide by (1 - x^m): running sums with stride m
            for k in range(m, order + 1):
                coeffs[k] += coeffs[k - m]
    if den.other != ONE:
        coeffs = series_div(coeffs, den.other.coeffs, order)
    return coeffs


def series_of_rational(f: RationalFunction, order: int) -> TruncatedSeries:
    """Taylor coefficients 0..order of f at x = 0, by exact division."""
    den = f.denominator
    if isinstance(den, FactoredDenominator):
        coeffs = _expand_factored(f.numerator, den, order)
    else:
        num, dc = f.numerator, den
        v = dc.valuation()
        if v:
            if f.numerator.valuation() < v and not f.numerator.is_zero():
                raise DenominatorVanishesAtZero(
                    "denominator vanishes at 0 faster than the numerator")
            num = QPolynomial(f.numerator.coeffs[v:])
            dc = QPolynomial(dc.coeffs[v:])
        coeffs = series_div(num.coeffs, dc.coeffs, order)
    return TruncatedSeries(tuple(coeffs), order)


def rational_reconstruct(prefix: TruncatedSeries, den: Denominator,
                         degree_bound: int,
                         slack: int = DEFAULT_SLACK) -> QPolynomial:
    """Recover the numerator P with P/den matching the series prefix.

    Every coefficient of prefix*den in degrees degree_bound+1..order must
    vanish; at least `slack` such verification coefficients are required.
    """
    if prefix.order < degree_bound + slack:
        raise ValueError(
            f"prefix of order {prefix.order} too short for degree bound "
            f"{degree_bound} with slack {slack}")
    if isinstance(den, FactoredDenominator):
        product = den.multiply_into(prefix.coefficients)
    else:
        full = poly_mul(QPolynomial(prefix.coefficients), den).coeffs
        product = list(full[:prefix.order + 1])
        product += [0] * (prefix.order + 1 - len(product))
    for k in range(degree_bound + 1, prefix.order + 1):
        if product[k]:
            raise ReconstructionMismatch(
                f"nonzero verification coefficient {product[k]} at degree {k}")
    return QPolynomial(product[:degree_bound + 1])


def _power_sums(poly: QPolynomial, count: int) -> list:
    """Power sums p_1..p_count of the roots, by Newton's identities."""
    k = poly.degree
    lead = poly.coeffs[-1]
    # elementary symmetric functions e_1..e_k of the roots
    e = [Fraction(0)] * (k + 1)
    e[0] = Fraction(1)
    for j in range(1, k + 1):
        e[j] = Fraction((-1) ** j) * poly.coeffs[k - j] / lead
    p = [Fraction(0)] * (count + 1)
    for m in range(1, count + 1):
        acc = Fraction(0)
        for j in range(1, min(m - 1, k) + 1):
            acc += Fraction((-1) ** (j - 1)) * e[j] * p[m - j]
        if m <= k:
            acc += Fraction((-1) ** (m - 1)) * e[m] * m
        p[m] = acc
    return p[1:]


def resultant_transform(den: QPolynomial, a: int) -> QPolynomial:
    """Polynomial whose roots are the a-th powers of den's roots.

    Constant term is normalized to den(0)**a, so products of (1-x^m)
    factors transform into the same shape.  Computed through power sums
    (Newton both ways), which is the resultant Res_z(den(z), z^a - x) up
    to normalization.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    if not den.coeffs or not den.coeffs[0]:
        raise ValueError("denominator must not vanish at 0")
    k = den.degree
    if k == 0:
        return QPolynomial([den.coeffs[0] ** a])
    p = _power_sums(den, a * k)
    q = [p[a * m - 1] for m in range(1, k + 1)]  # power sums of r_i^a
    # invert Newton: elementary symmetric functions f_1..f_k of r_i^a
    f = [Fraction(1)] + [Fraction(0)] * k
    for m in range(1, k + 1):
        acc = Fraction(0)
        for j in range(1, m + 1):
            acc += Fraction((-1) ** (j - 1)) * f[m - j] * q[j - 1]
        f[m] = acc / m
    monic = QPolynomial([Fraction((-1) ** (k - j)) * f[k - j]
                         for j in range(k + 1)])
    scale = Fraction(den.coeffs[0]) ** a / monic.coeffs[0]
    return monic * scale


def laurent_at_one(f: RationalFunction, order: int) -> LaurentExpansion:
    """Laurent data of f at x = 1 via the exact substitution x = 1 - u.

    The pole order is read off from the u-valuations of numerator and
    denominator after substitution, so no gcd reduction is needed.
    """
    nu = f.numerator.compose_one_minus()
    de = f.expanded_denominator.compose_one_minus()
    if nu.is_zero():
        return LaurentExpansion(0, tuple([Fraction(0)] * (order + 1)))
    vn, vd = nu.valuation(), de.valuation()
    body = series_div(nu.coeffs[vn:], de.coeffs[vd:],
                      order + max(0, vn - vd))
    pole = vd - vn
    if pole >= 0:
        return LaurentExpansion(pole, tuple(body[:order + 1]))
    zeros = [Fraction(0)] * (-pole)
    return LaurentExpansion(0, tuple((zeros + body)[:order + 1]))


def laurent_prototype(t: Scalar, order: int) -> LaurentExpansion:
    """Expansion of 1/(1 - x^t) at x = 1 for rational t != 0.

    Leading terms: 1/t, (t-1)/(2t), (t^2-1)/(12t), (t^2-1)/(24t), ...
    obtained from the generalized binomial series of (1-u)^t.
    """
    t = Fraction(t)
    if not t:
        raise ValueError("t must be nonzero")
    # 1 - (1-u)^t = sum_{k>=1} b_k u^k with b_k = -(-1)^k C(t,k)
    binom = Fraction(1)
    b = []
    for k in range(1, order + 2):
        binom *= (t - (k - 1)) / k
        b.append(-((-1) ** k) * binom)
    body = series_div([1], b, order)  # b[0] = t
    return LaurentExpansion(1, tuple(body))


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
