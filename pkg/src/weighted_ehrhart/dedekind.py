"""Classical and Fourier-Dedekind sums, computed exactly."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .arith import CyclotomicResidue
from .errors import InvalidArgs

# Below this modulus the descent finishes s(1, b) by direct summation.
NAIVE_BASE_BOUND = 64


def _check_pair(a: int, b: int) -> None:
    if b < 1:
        raise InvalidArgs(f"b must be positive, got {b}")
    if math.gcd(a, b) != 1:
        raise InvalidArgs(f"gcd({a}, {b}) = {math.gcd(a, b)} != 1")


def _naive_numerator(a: int, b: int) -> int:
    # ((r/b)) = (2r - b) / (2b) for 0 < r < b, so each term has denominator 4b^2
    total = 0
    for j in range(1, b):
        r = (j * a) % b
        if r:
            total += (2 * r - b) * (2 * j - b)
    return total


def dedekind_sum_naive(a: int, b: int) -> Fraction:
    """s(a, b) = sum_{j=1}^{b-1} ((ja/b)) ((j/b)), by direct summation."""
    _check_pair(a, b)
    if b == 1:
        return Fraction(0)
    return Fraction(_naive_numerator(a, b), 4 * b * b)


def dedekind_sum_fast(a: int, b: int) -> Fraction:
    """s(a, b) in O(log b) steps by Euclidean descent on the reciprocity law.

    Each step rewrites s(a, b) = -s(b, a) - 1/4 + (1 + a^2 + b^2) / (12ab)
    after reducing a modulo b.  Terms are accumulated over a common
    denominator and reduced once at the end.
    """
    _check_pair(a, b)
    num, den, sign = 0, 1, 1
    while b > 1:
        a %= b
        if a == 1 and b < NAIVE_BASE_BOUND:
            num = num * 4 * b * b + sign * _naive_numerator(1, b) * den
            den *= 4 * b * b
            break
        step_den = 12 * a * b
        num = num * step_den + sign * (1 + a * a + b * b - 3 * a * b) * den
        den *= step_den
        sign = -sign
        a, b = b, a
    return Fraction(num, den)


def dedekind_sum_table(b: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Direct-summation s(a, b) for every a in [0, b) coprime to b, vectorised.

    Returns ``(a_values, numerators, denominator)`` with
    ``s(a, b) = numerators[i] / denominator`` for ``a = a_values[i]``.
    Intended as a bulk oracle; intermediate sums stay exact below 2**53.
    """
    if b < 1:
        raise InvalidArgs(f"b must be positive, got {b}")
    if b == 1:
        return np.array([0]), np.array([0]), 1
    if b > 20000:
        raise InvalidArgs("table oracle limited to b <= 20000 (float64 exactness)")
    a_values = np.array([a for a in range(b) if math.gcd(a, b) == 1], dtype=np.int32)
    j = np.arange(1, b, dtype=np.int32)
    # a*j < 20000**2 fits in int32; coprime rows never hit residue 0 for 0 < j < b
    residues = np.multiply.outer(a_values, j) % np.int32(b)
    # each row permutes 1..b-1, so sum (2r-b)(2j-b) = 4 sum r*j - b^2 (b-1)
    cross = np.rint(residues.astype(np.float64) @ j.astype(np.float64)).astype(np.int64)
    numerators = 4 * cross - b * b * (b - 1)
    return a_values.astype(np.int64), numerators, 4 * b * b


def fds_denominator_inverse(a_list: Sequence[int], b: int) -> CyclotomicResidue:
    """1 / prod_i (1 - x**a_i) in Q[x] / (1 + ... + x**(b-1))."""
    for a in a_list:
        if math.gcd(a, b) != 1:
            raise InvalidArgs(f"gcd({a}, {b}) != 1: a denominator factor would vanish")
    return _fds_kernel(tuple(sorted(a % b for a in a_list)), b)


@lru_cache(maxsize=4096)
def _fds_kernel(a_list: tuple[int, ...], b: int) -> CyclotomicResidue:
    acc = CyclotomicResidue.one(b)
    for a in a_list:
        acc = acc * CyclotomicResidue.geometric_inverse(b, a)
    return acc


@lru_cache(maxsize=4096)
def _fds_values(a_list: tuple[int, ...], b: int) -> tuple[Fraction, ...]:
    # (1/b) * root_power_sum(n) for every n, sharing the coefficient total
    kernel = _fds_kernel(a_list, b)
    coeffs = kernel.coeffs + (Fraction(0),)
    mean = sum(kernel.coeffs, Fraction(0)) / b
    return tuple(coeffs[(-n) % b] - mean for n in range(b))


def fourier_dedekind_sum(n: int, a_list: Sequence[int], b: int) -> Fraction:
    """s_n(a_1, ..., a_m; b) = (1/b) sum_{k=1}^{b-1} z^{kn} / prod_i (1 - z^{k a_i}).

    Here z is a primitive b-th root of unity.  The whole sum is evaluated in
    the quotient ring, so the result is exact.
    """
    if b < 1:
        raise InvalidArgs(f"b must be positive, got {b}")
    if not a_list:
        raise InvalidArgs("a_list must be nonempty")
    for a in a_list:
        if math.gcd(a, b) != 1:
            raise InvalidArgs(f"gcd({a}, {b}) != 1: a denominator factor would vanish")
    if b == 1:
        return Fraction(0)
    return _fds_values(tuple(sorted(a % b for a in a_list)), b)[n % b]


def three_term_lhs(a: int, b: int, c: int) -> Fraction:
    """s(b c', a) + s(c a', b) + s(a b', c) with a' = a^-1 mod b, b' = b^-1 mod c, c' = c^-1 mod a."""
    for x, y in ((a, b), (a, c), (b, c)):
        if math.gcd(x, y) != 1:
            raise InvalidArgs(f"gcd({x}, {y}) != 1")

    def inv(x: int, m: int) -> int:
        return pow(x, -1, m) if m > 1 else 0

    return (
        dedekind_sum_fast(b * inv(c, a), a)
        + dedekind_sum_fast(c * inv(a, b), b)
        + dedekind_sum_fast(a * inv(b, c), c)
    )


def reciprocity_rhs(a: int, b: int) -> Fraction:
    return Fraction(-1, 4) + Fraction(1 + a * a + b * b, 12 * a * b)


def three_term_rhs(a: int, b: int, c: int) -> Fraction:
    return Fraction(-1, 4) + Fraction(a * a + b * b + c * c, 12 * a * b * c)


def zagier_t0_sum(a: int, b: int, c: int) -> Fraction:
    """s_0(a,b;c) + s_0(c,b;a) + s_0(a,c;b), which equals 1 - poly_{a,b,c}(0)."""
    return (
        fourier_dedekind_sum(0, (a, b), c)
        + fourier_dedekind_sum(0, (c, b), a)
        + fourier_dedekind_sum(0, (a, c), b)
    )
