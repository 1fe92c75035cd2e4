"""Hilbert series of symplectic reductions by weighted circle actions.

A weight vector A = (a_1, ..., a_n) of nonzero integers defines a linear
circle action on C^n.  This module computes the Hilbert series of the
algebra of invariants both before ("off shell") and after ("on shell")
imposing the moment map equation.  Three algorithms cover the three
weight profiles:

* all weights distinct ("Generic"): one partial-fraction piece per
  coordinate, each
  averaged over roots of unity by multisection of its Taylor prefix;
* repeated weights ("DegenerateResidue"): one piece per distinct weight,
  obtained from a
  higher-order residue computed with exact derivative arithmetic;
* all weights equal ("CompletelyDegenerate"): an explicit binomial
  formula.

Every dispatcher result is checked against a brute-force monomial count
before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

from .errors import (DegenerateWeights, DenominatorVanishesAtZero,
                     OracleMismatch, ZeroWeight)
from .exact import (DEFAULT_SLACK, ONE, FactoredDenominator, QPolynomial,
                    RationalFunction, TruncatedSeries, rational_reconstruct,
                    series_of_rational)

DEFAULT_ORACLE_DEGREE = 30

#: Above this numerator degree, skip full gcd reduction of clustered-path
#: results and settle for peeling whole (1 - x^m) factors.
REDUCE_DEGREE_LIMIT = 400


def normalize_weights(weights: Sequence[int]) -> Tuple[int, ...]:
    """Sorted positive primitive form of a weight vector.

    Signs are dropped, the entries are divided by their gcd and sorted.
    Both the invariant algebra and its Hilbert series only depend on
    this normal form.
    """
    if not weights:
        raise ZeroWeight("empty weight vector")
    if any(a == 0 for a in weights):
        raise ZeroWeight(f"zero entry in weight vector {tuple(weights)}")
    mags = sorted(abs(a) for a in weights)
    g = math.gcd(*mags)
    return tuple(a // g for a in mags)


@dataclass(frozen=True)
class HilbertSeriesResult:
    """On- and off-shell Hilbert series for one normalized weight vector."""

    weights: Tuple[int, ...]
    method: str  # "Generic", "DegenerateResidue" or "CompletelyDegenerate"
    on_shell: RationalFunction
    off_shell: RationalFunction
    pieces: Tuple[RationalFunction, ...] = ()

    def on_shell_series(self, order: int) -> TruncatedSeries:
        return series_of_rational(self.on_shell, order)

    def off_shell_series(self, order: int) -> TruncatedSeries:
        return series_of_rational(self.off_shell, order)


def phi_tilde(weights: Sequence[int], i: int) -> RationalFunction:
    """Partial-fraction piece of coordinate i for distinct weights.

    The raw piece is 1 / prod_{j != i} (1-x^(a_i-a_j))(1-x^(a_i+a_j)).
    Negative exponents are folded away with
    1/(1-x^(-m)) = -x^m/(1-x^m), so the result is analytic at 0.
    """
    a = weights[i]
    sign = 1
    shift = 0
    pairs = []
    for j, b in enumerate(weights):
        if j == i:
            continue
        for e in (a - b, a + b):
            if e == 0:
                raise DegenerateWeights(
                    f"repeated weight magnitude in {tuple(weights)}")
            if e < 0:
                sign = -sign
                shift += -e
                pairs.append((-e, 1))
            else:
                pairs.append((e, 1))
    return RationalFunction(QPolynomial.monomial(shift, sign),
                            FactoredDenominator.from_pairs(pairs))


def transformed_denominator(den: FactoredDenominator,
                            a: int) -> FactoredDenominator:
    """Denominator bound for the every-a-th-coefficient operator.

    Each factor (1-x^m)^e maps to (1-x^(lcm(a,m)/a))^(e*gcd(a,m)); the
    total degree is preserved and the image of any series with this
    denominator admits the transformed one.
    """
    if den.other != ONE or den.monomial_shift:
        raise ValueError("transformation rule needs a pure cyclotomic form")
    pairs = [(math.lcm(a, m) // a, e * math.gcd(a, m))
             for m, e in den.factors]
    return FactoredDenominator.from_pairs(pairs)


def u_average(f: RationalFunction, a: int,
              slack: int = DEFAULT_SLACK) -> RationalFunction:
    """Average of f over the a-th roots of unity, in the variable x^(1/a).

    Equivalently: keep every a-th Taylor coefficient.  The result is
    reconstructed as an exact rational function over the transformed
    denominator; `slack` extra coefficients certify the reconstruction.
    """
    if not isinstance(f.denominator, FactoredDenominator):
        raise ValueError("u_average needs a factored denominator")
    target = transformed_denominator(f.denominator, a)
    bound = target.degree
    prefix = series_of_rational(f, a * (bound + 2 + slack))
    sect = prefix.multisect(a)
    num = rational_reconstruct(sect, target, bound, slack)
    return RationalFunction(num, target)


def _pair_sum_denominator(weights: Sequence[int]) -> FactoredDenominator:
    """(1-x^2) * prod_{i<j} (1-x^(a_i+a_j)), the on-shell ansatz."""
    n = len(weights)
    pairs = [(2, 1)]
    pairs += [(weights[i] + weights[j], 1)
              for i in range(n) for j in range(i + 1, n)]
    return FactoredDenominator.from_pairs(pairs)


def hilbert_on_distinct(weights: Sequence[int],
                        slack: int = DEFAULT_SLACK):
    """On-shell Hilbert series for pairwise distinct weights.

    Returns (series over the pair-sum denominator, per-coordinate
    averaged pieces).
    """
    n = len(weights)
    if len(set(weights)) != n:
        raise DegenerateWeights(f"repeated weights in {tuple(weights)}")
    pieces = tuple(u_average(phi_tilde(weights, i), weights[i], slack)
                   for i in range(n))
    target = _pair_sum_denominator(weights)
    bound = target.degree
    order = bound + slack
    total = series_of_rational(pieces[0], order)
    for piece in pieces[1:]:
        total = total + series_of_rational(piece, order)
    num = rational_reconstruct(total, target, bound, slack)
    return RationalFunction(num, target), pieces


def _weight_clusters(weights: Sequence[int]):
    """Distinct weights with multiplicities, ascending."""
    out = []
    for a in weights:
        if out and out[-1][0] == a:
            out[-1][1] += 1
        else:
            out.append([a, 1])
    return [(a, p) for a, p in out]


def _tpoly_mul(a, b, tmax):
    """Product of polynomials in t with QPolynomial coefficients."""
    out = [QPolynomial() for _ in range(min(len(a) + len(b) - 1, tmax + 1))]
    for i, pa in enumerate(a[:tmax + 1]):
        if pa.is_zero():
            continue
        for j, pb in enumerate(b):
            if i + j > tmax:
                break
            out[i + j] = out[i + j] + pa * pb
    return out


def _tpoly_pow(base, e, tmax):
    out = [ONE]
    for _ in range(e):
        out = _tpoly_mul(out, base, tmax)
    return out


def _monomial_in_z(k: int, tmax: int):
    """(u+t)^k as a t-polynomial with u-polynomial coefficients."""
    return [QPolynomial.monomial(k - j, math.comb(k, j))
            for j in range(min(k, tmax) + 1)]


def residue_cluster(a: int, p: int, rest) -> RationalFunction:
    """Residue contribution of a weight a of multiplicity p.

    `rest` lists the other distinct weights as (b, multiplicity) pairs.
    The returned function R(u) satisfies: the off-shell Hilbert series
    is the sum over clusters of a * (every-a-th coefficient of R).

    R is the t^(p-1) coefficient of G(u+t) for the meromorphic kernel G
    of the cluster; the computation keeps 1/Den(t) as polynomials J_k
    over powers of Den(0) so that no polynomial division is needed.
    """
    exponent = p * a - 1 + sum(pb * b for b, pb in rest)
    tmax = p - 1

    # Den(t): each factor written in t with u-polynomial coefficients.
    one_minus_zz = [QPolynomial([1]) - QPolynomial.monomial(2 * a)]
    one_minus_zz += [QPolynomial.monomial(2 * a - j, -math.comb(a, j))
                     for j in range(1, min(a, tmax) + 1)]
    # (z^a - u^a)/(z - u) at z = u + t, via the hockey-stick identity
    quotient = [QPolynomial.monomial(a - 1 - j, math.comb(a, j + 1))
                for j in range(min(a - 1, tmax) + 1)]
    den = _tpoly_pow(one_minus_zz, p, tmax)
    den = _tpoly_mul(den, _tpoly_pow(quotient, p, tmax), tmax)
    for b, pb in rest:
        g1 = [QPolynomial([1]) - QPolynomial.monomial(a + b)]
        g1 += [QPolynomial.monomial(a + b - j, -math.comb(b, j))
               for j in range(1, min(b, tmax) + 1)]
        g2 = [QPolynomial.monomial(b) - QPolynomial.monomial(a)]
        g2 += [QPolynomial.monomial(b - j, math.comb(b, j))
               for j in range(1, min(b, tmax) + 1)]
        den = _tpoly_mul(den, _tpoly_pow(g1, pb, tmax), tmax)
        den = _tpoly_mul(den, _tpoly_pow(g2, pb, tmax), tmax)

    # Den(0) in factored form, for the final denominator of R.
    scalar = Fraction(a) ** p
    shift = p * (a - 1)
    pairs = [(2 * a, p)]
    for b, pb in rest:
        pairs.append((a + b, pb))
        pairs.append((abs(a - b), pb))
        shift += pb * min(a, b)
        if b > a:
            scalar *= (-1) ** pb
    d0 = den[0]

    # 1/Den(t) = sum_k J_k / Den(0)^(k+1) t^k with polynomial J_k.
    d0_pow = [ONE]
    for _ in range(tmax):
        d0_pow.append(d0_pow[-1] * d0)
    j_seq = [ONE]
    for k in range(1, tmax + 1):
        acc = QPolynomial()
        for j in range(1, k + 1):
            if j < len(den) and not den[j].is_zero():
                acc = acc + den[j] * j_seq[k - j] * d0_pow[j - 1]
        j_seq.append(-acc)

    num_t = _monomial_in_z(exponent, tmax)
    n_poly = QPolynomial()
    for k in range(tmax + 1):
        idx = tmax - k
        if idx < len(num_t):
            n_poly = n_poly + num_t[idx] * j_seq[k] * d0_pow[tmax - k]

    # R = N / Den(0)^p; clear the scalar and the u-power, which must
    # divide N exactly since R is analytic at 0.
    n_poly = n_poly * (Fraction(1) / scalar ** p)
    total_shift = shift * p
    if n_poly.valuation() < total_shift:
        raise DenominatorVanishesAtZero(
            "residue numerator not divisible by the expected power of u")
    n_poly = QPolynomial(n_poly.coeffs[total_shift:])
    den_pairs = [(m, e * p) for m, e in pairs]
    result = RationalFunction(n_poly, FactoredDenominator.from_pairs(den_pairs))
    return _peel_common(result)


def _divide_binomial(poly: QPolynomial, m: int):
    """Exact quotient of poly by (1 - x^m), or None if not divisible."""
    d = poly.degree - m
    if d < 0:
        return None
    q = [0] * (d + 1)
    c = poly.coeffs
    for k in range(d + 1):
        q[k] = c[k] + (q[k - m] if k >= m else 0)
    for k in range(d + 1, poly.degree + 1):
        expected = -q[k - m] if 0 <= k - m <= d else 0
        if c[k] != expected:
            return None
    return QPolynomial(q)


def _peel_common(f: RationalFunction) -> RationalFunction:
    """Cancel whole (1 - x^m) factors shared by numerator and denominator."""
    if not isinstance(f.denominator, FactoredDenominator):
        return f
    num = f.numerator
    pairs = []
    for m, e in f.denominator.factors:
        while e:
            quo = _divide_binomial(num, m)
            if quo is None:
                break
            num, e = quo, e - 1
        if e:
            pairs.append((m, e))
    if not pairs:
        return RationalFunction(num, ONE)
    return RationalFunction(num, FactoredDenominator.from_pairs(pairs))


def hilbert_off_clustered(weights: Sequence[int],
                          slack: int = DEFAULT_SLACK):
    """Off-shell Hilbert series when some weights repeat.

    Returns (series over a merged factored denominator, the averaged
    per-cluster pieces).
    """
    clusters = _weight_clusters(weights)
    pieces = []
    for a, p in clusters:
        rest = tuple((b, pb) for b, pb in clusters if b != a)
        piece = u_average(residue_cluster(a, p, rest), a, slack) * a
        pieces.append(_peel_common(piece))
    merged: dict = {}
    for piece in pieces:
        for m, e in piece.denominator.factors:
            merged[m] = max(merged.get(m, 0), e)
    total = QPolynomial()
    for piece in pieces:
        have = dict(piece.denominator.factors)
        cofactor = [(m, e - have.get(m, 0)) for m, e in merged.items()
                    if e > have.get(m, 0)]
        part = piece.numerator
        if cofactor:
            part = part * FactoredDenominator.from_pairs(cofactor).expand()
        total = total + part
    off = RationalFunction(total,
                           FactoredDenominator.from_pairs(merged.items()))
    return _peel_common(off), tuple(pieces)


def _on_from_off(off: RationalFunction) -> RationalFunction:
    """Multiply by (1 - x^2), cancelling a denominator factor if possible."""
    factors = dict(off.denominator.factors)
    if factors.get(2):
        factors[2] -= 1
        if not factors[2]:
            del factors[2]
        if not factors:
            return RationalFunction(off.numerator, ONE)
        return RationalFunction(off.numerator,
                                FactoredDenominator.from_pairs(factors.items()))
    num = off.numerator * QPolynomial([1, 0, -1])
    return _peel_common(RationalFunction(num, off.denominator))


def _off_from_on(on: RationalFunction) -> RationalFunction:
    pairs = list(on.denominator.factors) + [(2, 1)]
    return RationalFunction(on.numerator,
                            FactoredDenominator.from_pairs(pairs))


def hilbert_equal_weights(n: int) -> RationalFunction:
    """On-shell series for n equal weights:
    sum_k C(n-1,k)^2 x^(2k) over (1-x^2)^(2n-2)."""
    num = [0] * (2 * n - 1)
    for k in range(n):
        num[2 * k] = math.comb(n - 1, k) ** 2
    if n == 1:
        return RationalFunction(QPolynomial([1]), FactoredDenominator(()))
    return RationalFunction(QPolynomial(num),
                            FactoredDenominator.from_pairs([(2, 2 * n - 2)]))


def off_shell_equal_weights(n: int, order: int) -> TruncatedSeries:
    """Exact prefix of the off-shell series for n equal weights:
    coefficient of x^(2d) is C(n+d-1,d)^2."""
    coeffs = [0] * (order + 1)
    for d in range(order // 2 + 1):
        coeffs[2 * d] = math.comb(n + d - 1, d) ** 2
    return TruncatedSeries(tuple(coeffs), order)


def oracle_off_counts(weights: Sequence[int], order: int) -> list:
    """Brute-force invariant monomial counts, degrees 0..order.

    Counts pairs of exponent vectors (alpha, beta) with
    |alpha| + |beta| = k and equal weighted sums, by dynamic
    programming over (total degree, weighted sum).
    """
    top = order * max(weights)
    table = [[0] * (top + 1) for _ in range(order + 1)]
    table[0][0] = 1
    for a in weights:
        for d in range(1, order + 1):
            row, prev = table[d], table[d - 1]
            for s in range(a, top + 1):
                row[s] += prev[s - a]
    counts = []
    for k in range(order + 1):
        total = 0
        for d in range(k + 1):
            left, right = table[d], table[k - d]
            total += sum(x * y for x, y in zip(left, right) if x)
        counts.append(total)
    return counts


def verify_against_oracle(weights: Sequence[int], off: RationalFunction,
                          order: int = DEFAULT_ORACLE_DEGREE) -> None:
    got = series_of_rational(off, order).coefficients
    want = oracle_off_counts(weights, order)
    for k, (g, w) in enumerate(zip(got, want)):
        if g != w:
            raise OracleMismatch(
                f"weights {tuple(weights)}: degree {k} coefficient "
                f"{g} != brute-force count {w}")


@lru_cache(maxsize=None)
def _hilbert_series_cached(weights: Tuple[int, ...], slack: int,
                           oracle_degree) -> HilbertSeriesResult:
    clusters = _weight_clusters(weights)
    if len(clusters) == 1:
        n = len(weights)
        on = hilbert_equal_weights(n)
        result = HilbertSeriesResult(weights, "CompletelyDegenerate", on,
                                     _off_from_on(on))
    elif all(p == 1 for _, p in clusters):
        on, pieces = hilbert_on_distinct(weights, slack)
        result = HilbertSeriesResult(weights, "Generic", on,
                                     _off_from_on(on), pieces)
    else:
        off, pieces = hilbert_off_clustered(weights, slack)
        if off.numerator.degree <= REDUCE_DEGREE_LIMIT:
            off = _refactor(off.reduce())
        result = HilbertSeriesResult(weights, "DegenerateResidue",
                                     _on_from_off(off), off, pieces)
    if oracle_degree is not None:
        verify_against_oracle(weights, result.off_shell, oracle_degree)
    return result


def _refactor(f: RationalFunction) -> RationalFunction:
    """Rewrite an expanded denominator as a product of (1 - x^m) factors
    where possible; any leftover goes into the `other` slot."""
    den = f.expanded_denominator
    pairs = []
    m = den.degree
    while m >= 1 and den.degree >= 1:
        quo = _divide_binomial(den, m)
        if quo is None:
            m -= 1
        else:
            pairs.append((m, 1))
            den = quo
    if den == ONE:
        extra = ONE
    else:
        extra = den
    return RationalFunction(
        f.numerator, FactoredDenominator.from_pairs(pairs, other=extra))


def hilbert_series(weights: Sequence[int], slack: int = DEFAULT_SLACK,
                   oracle_degree=DEFAULT_ORACLE_DEGREE) -> HilbertSeriesResult:
    """On- and off-shell Hilbert series for a circle weight vector.

    Dispatches on the multiplicity profile of the normalized weights.
    Set oracle_degree=None to skip the brute-force cross-check.
    """
    return _hilbert_series_cached(normalize_weights(weights), slack,
                                  oracle_degree)
