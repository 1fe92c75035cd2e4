"""Laurent data of Hilbert series at x = 1.

The leading Laurent coefficients gamma_k of the on-shell Hilbert series
carry the geometry of the quotient.  For the circle case this module
provides closed forms for gamma_0 and gamma_2 = gamma_3 as ratios of
Schur polynomials evaluated at the weights, the passage from on-shell
to off-shell coefficients, and the linear constraints ("S_m = 0") that
characterize series behaving like a symplectic quotient of order r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .errors import (InsufficientCoefficients, PartitionPointsMismatch,
                     UnsupportedDimension)
from .exact import LaurentExpansion, QPolynomial, series_div


def _det(rows) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def complete_homogeneous(points: Sequence, top: int) -> list:
    """h_0..h_top of the given points, from prod 1/(1 - a_i t)."""
    den = QPolynomial([1])
    for a in points:
        den = den * QPolynomial([1, -Fraction(a)])
    return series_div([1], den.coeffs, top)


def schur_eval(partition: Sequence[int], points: Sequence) -> Fraction:
    """Schur polynomial s_partition at the given points (Jacobi-Trudi).

    Handles repeated points; the partition must be padded with zeros to
    the number of points.
    """
    if len(partition) != len(points):
        raise PartitionPointsMismatch(
            f"partition length {len(partition)} != {len(points)} points")
    if any(partition[i] < partition[i + 1] for i in range(len(partition) - 1)):
        raise ValueError("partition entries must be non-increasing")
    n = len(points)
    if n == 0:
        return Fraction(1)
    h = complete_homogeneous(points, partition[0] + n - 1)

    def entry(i, j):
        k = partition[i] - i + j
        return h[k] if 0 <= k < len(h) else Fraction(0)

    return _det([[entry(i, j) for j in range(n)] for i in range(n)])


def schur_bialternant(partition: Sequence[int], points: Sequence) -> Fraction:
    """Schur value as a ratio of alternants; points must be distinct."""
    if len(partition) != len(points):
        raise PartitionPointsMismatch(
            f"partition length {len(partition)} != {len(points)} points")
    n = len(points)
    pts = [Fraction(a) for a in points]
    if len(set(pts)) != n:
        raise ValueError("bialternant form needs distinct points")
    top = _det([[pts[i] ** (partition[j] + n - 1 - j) for j in range(n)]
                for i in range(n)])
    van = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            van *= pts[i] - pts[j]
    return top / van


def staircase_product(points: Sequence) -> Fraction:
    """s_(n-1,...,1,0) at the points: prod_{i<j} (a_i + a_j)."""
    out = Fraction(1)
    pts = list(points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            out *= pts[i] + pts[j]
    return out


def _clipped_staircase(n: int, drop: int) -> Tuple[int, ...]:
    """Staircase (n-1,...,0) with the top `drop` entries clamped down.

    drop=1 gives (n-2, n-2, n-3, ..., 0); drop=2 gives
    (n-3, n-3, n-3, n-4, ..., 0).
    """
    stairs = list(range(n - 1, -1, -1))
    clamp = n - 1 - drop
    return tuple(min(s, clamp) for s in stairs)


def gamma0_closed(weights: Sequence[int]) -> Fraction:
    """Leading Laurent coefficient of the on-shell circle series.

    Ratio of two Schur values at the (positive) weights; needs n >= 2.
    For n = 2 this reduces to 1/(a_1 + a_2).
    """
    n = len(weights)
    if n < 2:
        raise UnsupportedDimension("gamma0 closed form needs n >= 2")
    return (schur_eval(_clipped_staircase(n, 1), weights)
            / staircase_product(weights))


def gamma2_closed(weights: Sequence[int]) -> Fraction:
    """Subleading coefficient gamma_2 = gamma_3 of the on-shell series.

    Needs n >= 3.  Besides a bulk term built from Schur values at all
    weights, each coordinate whose removal leaves a non-primitive
    weight vector contributes a correction through the gcd g_j of the
    remaining weights.
    """
    n = len(weights)
    if n < 3:
        raise UnsupportedDimension("gamma2 closed form needs n >= 3")
    sum_sq = sum(a * a for a in weights)
    total = gamma0_closed(weights) / 12
    total += (schur_eval(_clipped_staircase(n, 2), weights) * sum_sq
              / (12 * staircase_product(weights)))
    for j in range(n):
        others = tuple(weights[:j]) + tuple(weights[j + 1:])
        g = math.gcd(*others)
        if g > 1:
            total += (g * g - 1) * gamma0_closed(others) / 12
    return total


@dataclass(frozen=True)
class GammaClosedForms:
    gamma0: Fraction
    gamma2: Fraction

    @property
    def gamma3(self) -> Fraction:
        return self.gamma2


def gamma_closed_forms(weights: Sequence[int]) -> GammaClosedForms:
    return GammaClosedForms(gamma0_closed(weights), gamma2_closed(weights))


def gamma0_equal_weights(n: int) -> Fraction:
    """gamma_0 for n equal weights: C(2n-2, n-1) / 4^(n-1).

    These are exactly the Taylor coefficients of 1/sqrt(1-x).
    """
    if n < 1:
        raise UnsupportedDimension("need n >= 1")
    return Fraction(math.comb(2 * n - 2, n - 1), 4 ** (n - 1))


def sqrt_series_coefficients(count: int) -> list:
    """Taylor coefficients of 1/sqrt(1-x), degrees 0..count-1."""
    out = [Fraction(1)]
    for k in range(1, count):
        out.append(out[-1] * Fraction(2 * k - 1, 2 * k))
    return out


def off_shell_coefficients(on: LaurentExpansion) -> LaurentExpansion:
    """Laurent data of series/(1-x^2) from the data of the series.

    The pole order grows by one; the coefficients follow the recursion
    delta_k = (gamma_k + delta_{k-1}) / 2 with delta_0 = gamma_0 / 2.
    """
    out = []
    prev = Fraction(0)
    for g in on.coefficients:
        prev = (g + prev) / 2
        out.append(prev)
    return LaurentExpansion(on.pole_order + 1, tuple(out))


@dataclass(frozen=True)
class SymplecticReport:
    """Result of testing the alternating-sum constraints S_1..S_max."""

    max_order: int
    residuals: Tuple[Fraction, ...]  # S_1, S_2, ..., S_max
    violations: Tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def residual(self, m: int) -> Fraction:
        return self.residuals[m - 1]


def symplectic_check(gammas: Sequence, max_order: int) -> SymplecticReport:
    """Evaluate S_m = sum_k (-1)^k C(m-1,k) gamma_(m+k) for m = 1..max_order.

    gammas are Laurent coefficients starting at the pole; S_m consumes
    indices up to 2m-1, so at least 2*max_order coefficients are needed.
    """
    coeffs = list(gammas.coefficients) if isinstance(gammas, LaurentExpansion) \
        else [Fraction(g) for g in gammas]
    if len(coeffs) < 2 * max_order:
        raise InsufficientCoefficients(
            f"need {2 * max_order} coefficients for S_1..S_{max_order}, "
            f"got {len(coeffs)}")
    residuals = []
    for m in range(1, max_order + 1):
        s = Fraction(0)
        for k in range(m):
            s += (-1) ** k * math.comb(m - 1, k) * coeffs[m + k]
        residuals.append(s)
    violations = tuple(m for m, s in enumerate(residuals, start=1) if s)
    return SymplecticReport(max_order, tuple(residuals), violations)
