"""Tests for Schur closed forms, Laurent data and the S_m constraints."""

import math
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from squot.circle import hilbert_series
from squot.errors import (InsufficientCoefficients, PartitionPointsMismatch,
                          UnsupportedDimension)
from squot.exact import (FactoredDenominator, QPolynomial, RationalFunction,
                         laurent_at_one)
from squot.laurent import (complete_homogeneous, gamma0_closed,
                           gamma0_equal_weights, gamma2_closed,
                           gamma_closed_forms, off_shell_coefficients,
                           schur_bialternant, schur_eval,
                           sqrt_series_coefficients, staircase_product,
                           symplectic_check)

Q = Fraction


def schur_by_tableaux(partition, points):
    """Independent Schur oracle: sum over semistandard tableaux."""
    n = len(points)
    shape = [r for r in partition if r]
    if not shape:
        return Q(1)

    rows = len(shape)
    total = Q(0)

    # rows weakly increase left to right, columns strictly increase down
    def rows_fill(r, prev_row, weight):
        nonlocal total
        if r == rows:
            total += weight
            return
        width = shape[r]

        def cells(c, row, w):
            if c == width:
                rows_fill(r + 1, row, w)
                return
            lo = row[c - 1] if c else 1
            if prev_row is not None:
                lo = max(lo, prev_row[c] + 1)
            for v in range(lo, n + 1):
                cells(c + 1, row + [v], w * points[v - 1])

        cells(0, [], weight)

    rows_fill(0, None, Q(1))
    return total


class TestSchur:
    def test_length_mismatch(self):
        with pytest.raises(PartitionPointsMismatch):
            schur_eval((1, 0), [1, 2, 3])

    def test_staircase_product_formula(self):
        pts = [2, 3, 5]
        assert schur_eval((2, 1, 0), pts) == staircase_product(pts)

    def test_elementary_and_complete(self):
        # s_(1,1,0) = e_2, s_(2,0,0) = h_2
        pts = [Q(1), Q(2), Q(4)]
        assert schur_eval((1, 1, 0), pts) == 1 * 2 + 1 * 4 + 2 * 4
        assert schur_eval((2, 0, 0), pts) == sum(
            pts[i] * pts[j] for i in range(3) for j in range(i, 3))

    def test_complete_homogeneous_repeated_points(self):
        h = complete_homogeneous([2, 2], 3)
        assert h == [1, 4, 12, 32]  # (k+1) 2^k

    SHAPES = [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2, 0), (3, 1, 0),
              (2, 1, 1), (3, 2, 1)]

    @pytest.mark.parametrize("shape", SHAPES)
    def test_three_routes_agree(self, shape):
        n = max(len(shape), 2)
        shape = tuple(shape) + (0,) * (n - len(shape))
        for pts in [(1, 2, 3), (2, 3, 7), (1, 4, 9)]:
            pts = pts[:n]
            jt = schur_eval(shape, pts)
            assert jt == schur_bialternant(shape, pts)
            assert jt == schur_by_tableaux(shape, pts)

    @given(st.lists(st.integers(1, 8), min_size=2, max_size=3),
           st.lists(st.integers(0, 3), min_size=2, max_size=3))
    @settings(max_examples=50, deadline=None)
    def test_jt_vs_tableaux_random(self, pts, rows):
        n = len(pts)
        shape = tuple(sorted(rows[:n], reverse=True)) + (0,) * max(0, n - len(rows))
        shape = shape[:n]
        assert schur_eval(shape, pts) == schur_by_tableaux(shape, pts)

    def test_repeated_points_ok(self):
        # Jacobi-Trudi stays finite at coinciding points
        assert schur_eval((1, 0), [3, 3]) == 6
        assert schur_eval((2, 1, 0), [2, 2, 2]) == staircase_product([2, 2, 2])


class TestGammaClosedForms:
    def test_reference_triple(self):
        assert gamma0_closed([4, 5, 20]) == Q(1, 27)
        assert gamma2_closed([4, 5, 20]) == Q(23, 162)
        forms = gamma_closed_forms([4, 5, 20])
        assert forms.gamma3 == forms.gamma2

    def test_two_weights(self):
        assert gamma0_closed([3, 7]) == Q(1, 10)
        with pytest.raises(UnsupportedDimension):
            gamma2_closed([3, 7])
        with pytest.raises(UnsupportedDimension):
            gamma0_closed([3])

    def test_engine_agreement_sample(self):
        for weights in [(1, 2, 3), (2, 3, 7), (1, 1, 2), (3, 4, 5, 7)]:
            r = hilbert_series(weights, oracle_degree=None)
            ex = laurent_at_one(r.on_shell, 3)
            assert ex.pole_order == 2 * len(weights) - 2
            assert ex.coefficients[0] == gamma0_closed(weights)
            assert ex.coefficients[1] == 0
            assert ex.coefficients[2] == gamma2_closed(weights)
            assert ex.coefficients[3] == gamma2_closed(weights)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_equal_weights_sqrt_series(self, n):
        assert gamma0_equal_weights(n) == sqrt_series_coefficients(n)[n - 1]
        assert gamma0_equal_weights(n) == Q(math.comb(2 * n - 2, n - 1),
                                            4 ** (n - 1))


class TestOffShellCoefficients:
    def test_recursion_matches_division(self):
        r = hilbert_series([1, 2, 3])
        on = laurent_at_one(r.on_shell, 6)
        off = laurent_at_one(r.off_shell, 6)
        derived = off_shell_coefficients(on)
        assert derived.pole_order == off.pole_order == on.pole_order + 1
        assert derived.coefficients == off.coefficients


def fixture_series(num, pairs):
    return RationalFunction(QPolynomial(num),
                            FactoredDenominator.from_pairs(pairs))


TORUS_2X4 = fixture_series([1, 0, 2, 2, 2, 0, 1], [(2, 2), (3, 2)])
TORUS_2X5 = fixture_series([1, 0, 3, 6, 11, 10, 14, 10, 11, 6, 3, 0, 1],
                           [(2, 2), (3, 2), (4, 2)])


class TestTorusFixtures:
    def test_2x4_gammas(self):
        ex = laurent_at_one(TORUS_2X4, 4)
        assert ex.pole_order == 4
        assert ex.coefficients == (Q(2, 9), 0, Q(11, 108), Q(11, 108),
                                   Q(49, 432))

    def test_2x5_gammas(self):
        ex = laurent_at_one(TORUS_2X5, 5)
        assert ex.pole_order == 6
        assert ex.coefficients == (Q(19, 144), 0, Q(41, 864), Q(41, 864),
                                   Q(407, 6912), Q(9, 128))


class TestSymplecticCheck:
    def test_needs_enough_coefficients(self):
        with pytest.raises(InsufficientCoefficients):
            symplectic_check([1, 0, 0], 2)

    def test_constant_series_passes(self):
        rep = symplectic_check([Q(1)] + [Q(0)] * 19, 10)
        assert rep.passed and rep.violations == ()

    def test_residual_structure(self):
        # S_1 = g1, S_2 = g2 - g3, S_3 = g3 - 2 g4 + g5
        gammas = [Q(k * k + 1) for k in range(8)]
        rep = symplectic_check(gammas, 3)
        assert rep.residual(1) == gammas[1]
        assert rep.residual(2) == gammas[2] - gammas[3]
        assert rep.residual(3) == gammas[3] - 2 * gammas[4] + gammas[5]

    def test_circle_quotients_pass(self):
        for weights in [(1, 2, 3), (1, 1, 2), (2, 3, 7)]:
            r = hilbert_series(weights, oracle_degree=None)
            ex = laurent_at_one(r.on_shell, 39)
            assert symplectic_check(ex, 20).passed, weights
