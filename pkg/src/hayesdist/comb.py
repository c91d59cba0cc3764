"""Exact combinatorial kernels.

Everything probability-bearing here is a `fractions.Fraction`; only the
Stirling-type binomial lower bound returns a float (it is an inequality
endpoint, not an identity).

The cycle-weighted permutation average

    A_j(a, b) = (1/j!) * sum over tau in S_j of a^l(tau) * b^l'(tau),

where l counts all cycles and l' the cycles whose length is not divisible
by the characteristic p, is computed by three independent routes: a
cycle-type sum over integer partitions, a power-series coefficient of
(1-z)^(-ab) * (1-z^p)^(-(a-ab)/p), and a closed double sum.  Agreement of
the three is part of the test surface, so none of them may be collapsed
into another.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable, Mapping, NamedTuple, Sequence

from .errors import ValidationError, check_budget

RationalLike = Fraction | int


class CycleStats(NamedTuple):
    """Cycle counts of a permutation: all cycles, and those whose length is
    not a multiple of the characteristic p.  Always 0 <= off_p <= total <= j."""

    total: int
    off_p: int


def binom_frac(x: RationalLike, m: int) -> Fraction:
    """Generalized binomial coefficient C(x, m) = x(x-1)...(x-m+1)/m! for rational x."""
    if m < 0:
        return Fraction(0)
    num = Fraction(1)
    for i in range(m):
        num *= Fraction(x) - i
    return num / math.factorial(m)


def truncated_binomial_sum(m: int, r: int, n: int, q: int) -> Fraction:
    """Partial alternating sum  sum_{j=0}^{m} (-1)^j C(n-r, j) q^-j.

    This is the order-m truncation of the binomial expansion of
    (1 - 1/q)^(n-r); it appears as the correction factor in the asymptotic
    zero-count formulas.
    """
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    if q < 2:
        raise ValueError("need q >= 2")
    if m < 0:
        raise ValueError("need m >= 0")
    qf = Fraction(1, q)
    return sum(((-1) ** j) * math.comb(n - r, j) * qf ** j for j in range(m + 1))


def partitions(j: int):
    """Integer partitions of j as non-increasing part tuples."""
    if j == 0:
        yield ()
        return
    def rec(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield prefix
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))
    yield from rec(j, j, ())


def cycle_type_class_size(parts: Sequence[int], j: int) -> int:
    """Number of permutations in S_j with the given cycle type."""
    counts: dict[int, int] = {}
    for part in parts:
        counts[part] = counts.get(part, 0) + 1
    denom = 1
    for length, c in counts.items():
        denom *= length ** c * math.factorial(c)
    return math.factorial(j) // denom


def cycle_average_bruteforce(j: int, a: RationalLike, b: RationalLike, p: int, budget: int = 9) -> Fraction:
    """A_j(a, b) summed over cycle types (partitions), weighted by class size."""
    if j < 0:
        raise ValueError("need j >= 0")
    check_budget("cycle-type enumeration degree", j, budget)
    a = Fraction(a)
    b = Fraction(b)
    total = Fraction(0)
    for parts in partitions(j):
        l = len(parts)
        l_prime = sum(1 for part in parts if part % p != 0)
        total += cycle_type_class_size(parts, j) * a ** l * b ** l_prime
    return total / math.factorial(j)


def cycle_average_series(j: int, a: RationalLike, b: RationalLike, p: int) -> Fraction:
    """A_j(a, b) as [z^j] (1-z)^(-ab) (1-z^p)^(-(a-ab)/p), by series convolution."""
    if j < 0:
        raise ValueError("need j >= 0")
    a = Fraction(a)
    b = Fraction(b)
    ab = a * b
    beta = (a - ab) / p
    # (1-z)^(-ab): coefficients via the recurrence c_{m+1} = c_m (ab+m)/(m+1)
    first = [Fraction(1)]
    for m in range(j):
        first.append(first[-1] * (ab + m) / (m + 1))
    # (1-z^p)^(-beta): supported on multiples of p
    second = [Fraction(0)] * (j + 1)
    c = Fraction(1)
    i = 0
    while i * p <= j:
        second[i * p] = c
        c = c * (beta + i) / (i + 1)
        i += 1
    return sum(first[m] * second[j - m] for m in range(j + 1))


def cycle_average_closed(j: int, a: RationalLike, b: RationalLike, p: int) -> Fraction:
    """A_j(a, b) by the closed double sum
    sum_{0 <= i <= j/p} C(ab+j-ip-1, j-ip) * C((a-ab)/p + i - 1, i)."""
    if j < 0:
        raise ValueError("need j >= 0")
    a = Fraction(a)
    b = Fraction(b)
    ab = a * b
    beta = (a - ab) / p
    total = Fraction(0)
    for i in range(j // p + 1):
        total += binom_frac(ab + j - i * p - 1, j - i * p) * binom_frac(beta + i - 1, i)
    return total


def _cycles_of(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = perm[i]
        cycles.append(cyc)
    return cycles


def cycle_stats(perm: Sequence[int], p: int) -> CycleStats:
    """CycleStats of a permutation given in one-line notation (perm[i] = image of i)."""
    cycles = _cycles_of(perm)
    return CycleStats(len(cycles), sum(1 for c in cycles if len(c) % p != 0))


def coordinate_sieve_check(
    j: int,
    D: Sequence,
    h: Mapping[tuple, RationalLike] | Callable[[tuple], RationalLike],
    budget: int | None = None,
) -> tuple[Fraction, Fraction]:
    """Evaluate both sides of the coordinate sieve (Li-Wan) identity.

    Returns (direct, sieved) where direct sums h over j-tuples of *distinct*
    elements of D, and sieved is  sum over tau in S_j of (-1)^(j - l(tau))
    times the sum of h over tuples constant on each cycle of tau.  The two
    are equal; both are returned so callers can assert it.
    """
    check_budget("tuple enumeration |D|^j", len(D) ** j, budget)
    hf = h if callable(h) else h.__getitem__

    direct = Fraction(0)
    for xs in itertools.permutations(D, j):
        direct += Fraction(hf(xs))

    sieved = Fraction(0)
    for perm in itertools.permutations(range(j)):
        cycles = _cycles_of(perm)
        sign = (-1) ** (j - len(cycles))
        sub = Fraction(0)
        for values in itertools.product(D, repeat=len(cycles)):
            xs = [None] * j
            for cyc, v in zip(cycles, values):
                for i in cyc:
                    xs[i] = v
            sub += Fraction(hf(tuple(xs)))
        sieved += sign * sub
    return direct, sieved


def probs_from_moments(moments: Sequence[RationalLike], M: int) -> list[Fraction]:
    """Recover P(Y = r), r = 0..M, from the binomial moments E[C(Y, j)].

    Uses the inversion P(Y=r) = sum_{j>=r} (-1)^(j-r) C(j, r) E[C(Y, j)],
    exactly.  Raises ValidationError when the inputs are not the moments of
    any distribution on {0..M} (a negative mass or a bad total is produced).
    """
    if len(moments) < M + 1:
        raise ValidationError("need moments for j = 0..M")
    ms = [Fraction(m) for m in moments[: M + 1]]
    probs = []
    for r in range(M + 1):
        p_r = sum((-1) ** (j - r) * math.comb(j, r) * ms[j] for j in range(r, M + 1))
        if p_r < 0:
            raise ValidationError(f"inconsistent moments: P(Y={r}) = {p_r} < 0")
        probs.append(p_r)
    if sum(probs) != ms[0]:
        raise ValidationError("inconsistent moments: masses do not sum to moment 0")
    return probs


def truncation_gap(moments: Sequence[RationalLike], m: int, r: int) -> Fraction:
    """Envelope C(m, r) * E[C(Y, m)] for stopping the inversion at j = m-1."""
    return math.comb(m, r) * Fraction(moments[m])


def binomial_lower_bound(M: int, m: int) -> float:
    """Stirling-type lower bound for C(M, m), valid for 0 < m < M:

    sqrt(M / (2 pi m (M-m))) * (M/m)^m * (M/(M-m))^(M-m) * e^(-1/6).
    """
    if not 0 < m < M:
        raise ValueError("need 0 < m < M")
    return (
        math.sqrt(M / (2 * math.pi * m * (M - m)))
        * (M / m) ** m
        * (M / (M - m)) ** (M - m)
        * math.exp(-1 / 6)
    )
