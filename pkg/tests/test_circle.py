"""Tests for the circle-quotient Hilbert series engine."""

import math
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from squot.circle import (HilbertSeriesResult, hilbert_equal_weights,
                          hilbert_off_clustered, hilbert_on_distinct,
                          hilbert_series, normalize_weights,
                          off_shell_equal_weights, oracle_off_counts,
                          phi_tilde, residue_cluster, transformed_denominator,
                          u_average, verify_against_oracle)
from squot.errors import DegenerateWeights, OracleMismatch, ZeroWeight
from squot.exact import (FactoredDenominator, QPolynomial, RationalFunction,
                         series_of_rational)


class TestNormalize:
    def test_signs_sort_gcd(self):
        assert normalize_weights([-6, 2, 4]) == (1, 2, 3)
        assert normalize_weights([5]) == (1,)
        assert normalize_weights([3, 3]) == (1, 1)

    def test_zero_rejected(self):
        with pytest.raises(ZeroWeight):
            normalize_weights([1, 0])
        with pytest.raises(ZeroWeight):
            normalize_weights([])

    @given(st.lists(st.integers(-9, 9).filter(bool), min_size=1, max_size=5),
           st.permutations(range(5)))
    def test_invariance(self, ws, perm):
        shuffled = [ws[p % len(ws)] for p in perm[:len(ws)]]
        base = normalize_weights(ws)
        assert normalize_weights([-w for w in ws]) == base
        assert normalize_weights([3 * w for w in ws]) == base


class TestPhiTilde:
    def test_worked_example_pieces(self):
        # weights (1,2,3): the three normalized pieces
        f1 = phi_tilde((1, 2, 3), 0)
        assert f1.numerator == QPolynomial([0, 0, 0, 1])  # x^3
        assert f1.denominator.factors == ((1, 1), (2, 1), (3, 1), (4, 1))
        f2 = phi_tilde((1, 2, 3), 1)
        assert f2.numerator == QPolynomial([0, -1])  # -x
        assert f2.denominator.factors == ((1, 2), (3, 1), (5, 1))
        f3 = phi_tilde((1, 2, 3), 2)
        assert f3.numerator == QPolynomial([1])
        assert f3.denominator.factors == ((1, 1), (2, 1), (4, 1), (5, 1))

    def test_repeated_weight_rejected(self):
        with pytest.raises(DegenerateWeights):
            phi_tilde((2, 2), 0)


class TestUAverage:
    def test_worked_example_intermediates(self):
        u2 = u_average(phi_tilde((1, 2, 3), 1), 2)
        assert u2.numerator == QPolynomial([0, -2, -1, -2, -1, -2])
        assert u2.denominator.factors == ((1, 2), (3, 1), (5, 1))
        u3 = u_average(phi_tilde((1, 2, 3), 2), 3)
        assert u3.numerator == QPolynomial([1, 1, 4, 5, 5, 5, 4, 1, 1])
        assert u3.denominator.factors == ((1, 1), (2, 1), (4, 1), (5, 1))

    def test_u1_is_identity(self):
        f = phi_tilde((2, 3, 7), 0)
        g = u_average(f, 1)
        assert g.equals(f)

    @given(st.integers(1, 6), st.integers(1, 8))
    @settings(max_examples=40, deadline=None)
    def test_agrees_with_multisection(self, a, m):
        f = RationalFunction(QPolynomial([1, 1]),
                             FactoredDenominator.from_pairs([(m, 1), (1, 1)]))
        g = u_average(f, a)
        direct = series_of_rational(f, 30 * a).multisect(a)
        back = series_of_rational(g, 30)
        assert back.coefficients == direct.coefficients[:31]


class TestDistinctWeights:
    def test_worked_example(self):
        on, _ = hilbert_on_distinct((1, 2, 3))
        assert on.numerator == QPolynomial([1, 0, 1, 3, 4, 4, 4, 3, 1, 0, 1])
        assert on.denominator.factors == ((2, 1), (3, 1), (4, 1), (5, 1))

    def test_transformed_denominator_rule(self):
        den = FactoredDenominator.from_pairs([(1, 1), (2, 1), (3, 1), (4, 1)])
        out = transformed_denominator(den, 2)
        assert out.factors == ((1, 3), (2, 2), (3, 1))
        assert out.degree == den.degree


class TestClusterResidue:
    def test_two_equal_weights(self):
        r = residue_cluster(1, 2, ())
        # off-shell series of (1,1) comes out of this single cluster
        assert r.numerator == QPolynomial([1, 0, 1])
        assert r.denominator.factors == ((2, 3),)

    def test_matches_distinct_route(self):
        # dual route: the residue machinery on multiplicity-one clusters
        # must reproduce the generic algorithm
        for weights in [(1, 2), (2, 3, 5), (1, 4, 6)]:
            off_residue, _ = hilbert_off_clustered(weights)
            on_generic, _ = hilbert_on_distinct(weights)
            got = series_of_rational(off_residue, 40).coefficients
            want = series_of_rational(
                RationalFunction(on_generic.numerator,
                                 FactoredDenominator.from_pairs(
                                     list(on_generic.denominator.factors)
                                     + [(2, 1)])), 40).coefficients
            assert got == want, weights


def small_profiles(max_n, max_w):
    for n in range(1, max_n + 1):
        yield from combinations_with_replacement(range(1, max_w + 1), n)


class TestOracle:
    def test_counts_small(self):
        # hand count for weights (1,): invariants of degree k are
        # z^a zbar^b with a = b, so only even degrees contribute, once
        assert oracle_off_counts((1,), 6) == [1, 0, 1, 0, 1, 0, 1]

    def test_counts_two_weights(self):
        # (1,2): generators z1 zbar1, z2 zbar2, z1^2 zbar2, zbar1^2 z2
        counts = oracle_off_counts((1, 2), 4)
        assert counts[0] == 1 and counts[1] == 0
        assert counts[2] == 2  # z1 zbar1, z2 zbar2
        assert counts[3] == 2  # z1^2 zbar2, zbar1^2 z2

    def test_dispatcher_catches_wrong_series(self):
        wrong = RationalFunction(
            QPolynomial([1, 1]), FactoredDenominator.from_pairs([(2, 3)]))
        with pytest.raises(OracleMismatch):
            verify_against_oracle((1, 1), wrong, 10)

    @pytest.mark.parametrize("weights",
                             sorted(set(normalize_weights(w)
                                        for w in small_profiles(3, 5))))
    def test_engine_matches_oracle(self, weights):
        result = hilbert_series(weights, oracle_degree=None)
        got = result.off_shell_series(25).coefficients
        assert list(got) == oracle_off_counts(weights, 25)


class TestEqualWeights:
    @pytest.mark.parametrize("n", range(1, 11))
    def test_closed_form_on_shell(self, n):
        on = hilbert_equal_weights(n)
        num = [0] * (2 * n - 1)
        for k in range(n):
            num[2 * k] = math.comb(n - 1, k) ** 2
        assert list(on.numerator.coeffs) == [c for c in num[:on.numerator.degree + 1]]
        if n > 1:
            assert on.denominator.factors == ((2, 2 * n - 2),)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_off_shell_binomial_squares(self, n):
        result = hilbert_series([1] * n, oracle_degree=None)
        got = result.off_shell_series(20)
        assert got.coefficients == off_shell_equal_weights(n, 20).coefficients

    def test_gcd_reduction_routes_here(self):
        result = hilbert_series([7, 7, 7])
        assert result.method == "CompletelyDegenerate"
        assert result.weights == (1, 1, 1)


class TestDispatcher:
    def test_methods(self):
        assert hilbert_series([1, 2, 3]).method == "Generic"
        assert hilbert_series([1, 2, 2]).method == "DegenerateResidue"
        assert hilbert_series([4, 4]).method == "CompletelyDegenerate"
        assert hilbert_series([5]).method == "CompletelyDegenerate"

    def test_single_weight_trivial(self):
        r = hilbert_series([5])
        assert r.on_shell.numerator == QPolynomial([1])
        assert r.on_shell.denominator.factors == ()
        assert series_of_rational(r.off_shell, 6).coefficients \
            == (1, 0, 1, 0, 1, 0, 1)

    def test_on_off_relation(self):
        for weights in [(1, 2, 3), (1, 1, 2), (2, 2)]:
            r = hilbert_series(weights)
            on = r.on_shell_series(30).coefficients
            off = r.off_shell_series(30).coefficients
            # on-shell = (1 - x^2) * off-shell
            for k in range(30 + 1):
                want = off[k] - (off[k - 2] if k >= 2 else 0)
                assert on[k] == want

    def test_sign_and_scale_invariance(self):
        a = hilbert_series([1, -2, 3])
        b = hilbert_series([2, 4, 6])
        assert a.on_shell.numerator == b.on_shell.numerator
        assert a.weights == b.weights == (1, 2, 3)

    def test_torus_fixture_recovered(self):
        # (1,2,2) reproduces a printed two-torus reduction series
        r = hilbert_series([1, 2, 2])
        assert list(r.on_shell.numerator.coeffs) == [1, 0, 2, 2, 2, 0, 1]
        assert r.on_shell.denominator.factors == ((2, 2), (3, 2))
