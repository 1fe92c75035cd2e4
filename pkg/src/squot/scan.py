"""Integrality scans over weight triples.

For n = 3 the reciprocal leading coefficient of the on-shell series is
1/gamma_0 = (a+b)(a+c)(b+c) / (ab+ac+bc); this module tests its
integrality (equivalent to 1/a + 1/b + 1/c being a unit fraction),
counts how often it holds among all ordered positive triples of bounded
total weight, and decides whether a triple passing the first test can
still be ruled out by the second-order coefficient: matching a finite
group would require writing 12 gamma_2 / gamma_0 as a sum of m^2 - 1
over divisors m >= 2 of 1/gamma_0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Tuple

from .errors import NotApplicable
from .laurent import gamma0_closed, gamma2_closed


def reciprocal_gamma0(triple: Sequence[int]) -> Fraction:
    a, b, c = triple
    return Fraction((a + b) * (a + c) * (b + c), a * b + a * c + b * c)


def gamma0_is_integral(triple: Sequence[int]) -> bool:
    """Integer test for 1/gamma_0, in pure integer arithmetic."""
    a, b, c = triple
    return (a + b) * (a + c) * (b + c) % (a * b + a * c + b * c) == 0


def is_unit_fraction_sum(triple: Sequence[int]) -> bool:
    """Whether 1/a + 1/b + 1/c is the reciprocal of an integer."""
    total = sum(Fraction(1, a) for a in triple)
    return total.numerator == 1


def gamma2_ratio(triple: Sequence[int]) -> Fraction:
    """12 gamma_2 / gamma_0 for a weight triple."""
    return 12 * gamma2_closed(triple) / gamma0_closed(triple)


def gamma2_condition(triple: Sequence[int]) -> bool:
    """Whether 12 gamma_2 / gamma_0 is an integer."""
    return gamma2_ratio(triple).denominator == 1


def pseudoreflection_obstruction(triple: Sequence[int]) -> bool:
    """Whether 12 gamma_2/gamma_0 is a sum of m^2 - 1 over divisors
    m >= 2 of the integer 1/gamma_0 (with repetitions allowed).

    Returns True when such a decomposition exists, False when it is
    impossible.  Raises NotApplicable when 1/gamma_0 is not an integer.
    """
    recip = reciprocal_gamma0(triple)
    if recip.denominator != 1:
        raise NotApplicable(f"1/gamma_0 = {recip} is not an integer")
    ratio = gamma2_ratio(triple)
    if ratio.denominator != 1:
        return False
    target = ratio.numerator
    sizes = sorted({m * m - 1 for m in range(2, recip.numerator + 1)
                    if recip.numerator % m == 0})
    reachable = [True] + [False] * target
    for s in sizes:
        for t in range(s, target + 1):
            if reachable[t - s]:
                reachable[t] = True
    return reachable[target]


@dataclass(frozen=True)
class ScanResult:
    """Integrality statistics at one level L.

    `total` counts all ordered positive triples with a+b+c <= L, which
    is C(L, 3); `hits` counts those with integral 1/gamma_0.
    """

    level: int
    hits: int
    total: int

    @property
    def probability(self) -> Fraction:
        return Fraction(self.hits, self.total) if self.total else Fraction(0)


def _unordered_triples(level: int) -> Iterator[Tuple[int, int, int]]:
    for a in range(1, level // 3 + 1):
        for b in range(a, (level - a) // 2 + 1):
            for c in range(b, level - a - b + 1):
                yield a, b, c


def _permutations_count(a: int, b: int, c: int) -> int:
    if a == b == c:
        return 1
    if a == b or b == c:
        return 3
    return 6


def integral_triples(level: int) -> Iterator[Tuple[int, int, int]]:
    """Non-decreasing triples with a+b+c <= level and integral 1/gamma_0."""
    for t in _unordered_triples(level):
        if gamma0_is_integral(t):
            yield t


def _hits_by_sum_slice(args) -> list:
    """Ordered hit counts indexed by a+b+c, for a in [a_lo, a_hi)."""
    a_lo, a_hi, level = args
    out = [0] * (level + 1)
    for a in range(a_lo, a_hi):
        for b in range(a, (level - a) // 2 + 1):
            for c in range(b, level - a - b + 1):
                if gamma0_is_integral((a, b, c)):
                    out[a + b + c] += _permutations_count(a, b, c)
    return out


def hits_by_sum(level: int, jobs: int = 1) -> list:
    """Ordered hit counts per exact total weight, indices 0..level."""
    top = level // 3 + 1
    if jobs <= 1 or top <= 8:
        return _hits_by_sum_slice((1, top, level))
    from concurrent.futures import ProcessPoolExecutor
    bounds = [round(i * (top - 1) / jobs) + 1 for i in range(jobs + 1)]
    chunks = [(bounds[i], bounds[i + 1], level) for i in range(jobs)]
    out = [0] * (level + 1)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_hits_by_sum_slice, chunks):
            for s, h in enumerate(part):
                out[s] += h
    return out


def probability_scan(levels: Sequence[int], jobs: int = 1) -> list:
    """ScanResult per requested level, from one pass to the largest."""
    todo = sorted(set(levels))
    if not todo or todo[0] < 3:
        raise ValueError("levels must be integers >= 3")
    per_sum = hits_by_sum(todo[-1], jobs)
    results = []
    hits = 0
    done = 0
    for level in todo:
        hits += sum(per_sum[done + 1:level + 1])
        done = level
        results.append(ScanResult(level, hits, math.comb(level, 3)))
    return results


def full_scan(max_level: int, jobs: int = 1) -> list:
    """ScanResult for every level 3..max_level."""
    if max_level < 3:
        raise ValueError("max_level must be >= 3")
    return probability_scan(range(3, max_level + 1), jobs)
