"""Invariant series of finite diagonal abelian subgroups of U(n).

A group is given by generators diag(zeta_m^e_1, ..., zeta_m^e_n); its
elements are stored as tuples of rationals in [0, 1) (exponents of
e^(2 pi i .)).  The quotient acts on the doubled space (z, conjugate z),
so its Hilbert series counts pairs of monomials with opposite characters.

Beyond the exact series, the module evaluates closed forms for the
Laurent coefficients at x = 1 in terms of the pseudoreflections of the
group (elements moving exactly one coordinate) and cross-checks them
against the series, sharing the contribution of elements that move
exactly two coordinates between the gamma_4 and gamma_5 formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .errors import (PrimitiveCoverFailure, TheoremInconsistency)
from .exact import (DEFAULT_SLACK, FactoredDenominator, LaurentExpansion,
                    QPolynomial, RationalFunction, TruncatedSeries,
                    laurent_at_one, rational_reconstruct)

Element = Tuple[Fraction, ...]


def _mod1(x: Fraction) -> Fraction:
    return x - math.floor(x)


def generator_element(modulus: int, exponents: Sequence[int]) -> Element:
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    return tuple(_mod1(Fraction(e, modulus)) for e in exponents)


def element_order(g: Element) -> int:
    return math.lcm(*(x.denominator for x in g))


def _support(g: Element) -> Tuple[int, ...]:
    return tuple(i for i, x in enumerate(g) if x)


@dataclass(frozen=True)
class FiniteDiagonalGroup:
    """Closure of a set of diagonal unitary generators."""

    dimension: int
    elements: Tuple[Element, ...]

    @staticmethod
    def from_generators(generators) -> "FiniteDiagonalGroup":
        """generators: iterable of (modulus, exponent tuple)."""
        gens = [generator_element(m, e) for m, e in generators]
        if not gens:
            raise ValueError("need at least one generator")
        n = len(gens[0])
        if any(len(g) != n for g in gens):
            raise ValueError("generators act on different dimensions")
        identity = tuple(Fraction(0) for _ in range(n))
        seen = {identity}
        frontier = [identity]
        while frontier:
            new = []
            for el in frontier:
                for g in gens:
                    nxt = tuple(_mod1(a + b) for a, b in zip(el, g))
                    if nxt not in seen:
                        seen.add(nxt)
                        new.append(nxt)
            frontier = new
        return FiniteDiagonalGroup(n, tuple(sorted(seen)))

    @property
    def order(self) -> int:
        return len(self.elements)

    def coordinate_orders(self) -> Tuple[int, ...]:
        """Order of the character of each coordinate over the group."""
        return tuple(math.lcm(*(g[i].denominator for g in self.elements))
                     for i in range(self.dimension))

    def pseudoreflections(self) -> Tuple[Element, ...]:
        return tuple(g for g in self.elements if len(_support(g)) == 1)

    def two_coordinate_elements(self) -> Tuple[Element, ...]:
        return tuple(g for g in self.elements if len(_support(g)) == 2)


def invariant_counts(group: FiniteDiagonalGroup, order: int) -> list:
    """Number of invariant monomials in (z, conjugate z) per total degree.

    A monomial z^alpha zbar^beta is invariant iff for every group
    element the residue sum(e_i (alpha_i - beta_i)) vanishes; it is
    enough to test a generating set, and the full element list is used
    as one.  Counting runs over states (degree, residue vector).
    """
    n = group.dimension
    # a small generating family keeps the residue state space tight
    gens: list = []
    span = {tuple(Fraction(0) for _ in range(n))}
    for g in group.elements:
        if g in span:
            continue
        gens.append(g)
        span = _closure(gens, n)
        if len(span) == group.order:
            break
    steps = []
    for i in range(n):
        plus = tuple(g[i] for g in gens)
        steps.append(plus)
        steps.append(tuple(_mod1(-x) for x in plus))
    zero = tuple(Fraction(0) for _ in gens)
    dp = [{zero: 1}]
    for d in range(1, order + 1):
        dp.append({})
    for step in steps:
        for d in range(1, order + 1):
            cur, prev = dp[d], dp[d - 1]
            for state, cnt in prev.items():
                nxt = tuple(_mod1(a + b) for a, b in zip(state, step))
                cur[nxt] = cur.get(nxt, 0) + cnt
    return [sum(cnt for state, cnt in layer.items()
                if not any(state)) if layer else 0 for layer in dp]


def _closure(gens, n):
    identity = tuple(Fraction(0) for _ in range(n))
    seen = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for el in frontier:
            for g in gens:
                nxt = tuple(_mod1(a + b) for a, b in zip(el, g))
                if nxt not in seen:
                    seen.add(nxt)
                    new.append(nxt)
        frontier = new
    return seen


def molien_series(group: FiniteDiagonalGroup,
                  slack: int = DEFAULT_SLACK) -> RationalFunction:
    """Exact Hilbert series of the doubled invariant ring.

    The denominator ansatz prod_i (1 - x^(m_i))^2, with m_i the order of
    coordinate i, always admits a polynomial numerator because z_i^(m_i)
    and its conjugate are invariant.
    """
    moduli = group.coordinate_orders()
    den = FactoredDenominator.from_pairs((m, 2) for m in moduli)
    bound = den.degree
    counts = invariant_counts(group, bound + slack)
    prefix = TruncatedSeries(tuple(counts), bound + slack)
    num = rational_reconstruct(prefix, den, bound, slack)
    return RationalFunction(num, den)


@dataclass(frozen=True)
class ReflectionData:
    """Pseudoreflection bookkeeping for one group."""

    primitive: Tuple[Element, ...]       # one generator per moved axis
    primitive_orders: Tuple[int, ...]
    reflection_count: int
    two_coordinate_count: int


def reflection_analysis(group: FiniteDiagonalGroup) -> ReflectionData:
    """Pick one maximal-order pseudoreflection per axis and check that
    its powers account for every pseudoreflection on that axis."""
    refs = group.pseudoreflections()
    by_axis: dict = {}
    for g in refs:
        by_axis.setdefault(_support(g)[0], []).append(g)
    primitive = []
    for axis in sorted(by_axis):
        best = min(by_axis[axis],
                   key=lambda g: (-element_order(g), g))
        covered = set()
        step = best[axis]
        acc = Fraction(0)
        for _ in range(element_order(best)):
            acc = _mod1(acc + step)
            covered.add(acc)
        for g in by_axis[axis]:
            if g[axis] not in covered:
                raise PrimitiveCoverFailure(
                    f"axis {axis}: {g} is not a power of {best}")
        primitive.append(best)
    return ReflectionData(tuple(primitive),
                          tuple(element_order(g) for g in primitive),
                          len(refs), len(group.two_coordinate_elements()))


@dataclass(frozen=True)
class FiniteGroupResult:
    group: FiniteDiagonalGroup
    series: RationalFunction
    laurent: LaurentExpansion
    reflections: ReflectionData
    gammas: Tuple[Fraction, ...]  # gamma_0..gamma_5 closed forms
    q_contribution: Fraction      # shared two-coordinate term in gamma_4/5


def analyze_group(group: FiniteDiagonalGroup,
                  slack: int = DEFAULT_SLACK) -> FiniteGroupResult:
    """Series, Laurent data and closed-form coefficients for one group.

    gamma_0..gamma_3 are evaluated directly from the pseudoreflection
    orders.  gamma_4 and gamma_5 share an unknown contribution of the
    elements moving two coordinates; it is solved from the series value
    of gamma_4 and must then reproduce gamma_5 exactly, and the identity
    gamma_3 - 2 gamma_4 + gamma_5 = 0 must hold.
    """
    series = molien_series(group, slack)
    expansion = laurent_at_one(series, 5)
    if expansion.pole_order != 2 * group.dimension:
        raise TheoremInconsistency(
            f"pole order {expansion.pole_order} != 2n")
    refl = reflection_analysis(group)
    size = group.order
    quad = sum(m * m - 1 for m in refl.primitive_orders)
    g0 = Fraction(1, size)
    g1 = Fraction(0)
    g2 = Fraction(quad, 12 * size)
    quart1 = sum(-m ** 4 + 50 * m * m - 49 for m in refl.primitive_orders)
    quart2 = sum(-2 * m ** 4 + 40 * m * m - 38 for m in refl.primitive_orders)
    engine_g4 = expansion.coefficients[4]
    q_sum = size * engine_g4 - Fraction(quart1, 720)
    g4 = Fraction(quart1, 720) / size + q_sum / size
    g5 = Fraction(quart2, 720) / size + 2 * q_sum / size
    gammas = (g0, g1, g2, g2, g4, g5)
    for k, (want, got) in enumerate(zip(gammas, expansion.coefficients)):
        if want != got:
            raise TheoremInconsistency(
                f"gamma_{k}: closed form {want} != series value {got}")
    if g2 - 2 * g4 + g5 != 0:
        raise TheoremInconsistency(
            "identity gamma_3 - 2 gamma_4 + gamma_5 = 0 fails")
    return FiniteGroupResult(group, series, expansion, refl, gammas, q_sum)


def cyclic_group(m: int, exponents: Sequence[int]) -> FiniteDiagonalGroup:
    return FiniteDiagonalGroup.from_generators([(m, tuple(exponents))])


def gessel_sum(kind: str, m: int) -> Fraction:
    """Closed forms for sums over nontrivial m-th roots of unity.

    kind selects the summand f(zeta):
      quad:   zeta/(1-zeta)^2      -> -(m^2-1)/12
      cube1:  zeta/(1-zeta)^3      -> -(m^2-1)/24
      cube2:  zeta^2/(1-zeta)^3    ->  (m^2-1)/24
      quart1: zeta/(1-zeta)^4      ->  (m^4-20m^2+19)/720
      quart2: zeta^2/(1-zeta)^4    ->  (m^4+10m^2-11)/720
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    table = {
        "quad": Fraction(-(m * m - 1), 12),
        "cube1": Fraction(-(m * m - 1), 24),
        "cube2": Fraction(m * m - 1, 24),
        "quart1": Fraction(m ** 4 - 20 * m * m + 19, 720),
        "quart2": Fraction(m ** 4 + 10 * m * m - 11, 720),
    }
    if kind not in table:
        raise ValueError(f"unknown kind {kind!r}")
    return table[kind]
