"""Exact integer/rational primitives shared by the rest of the package.

Rationals are plain :class:`fractions.Fraction` values.  This module adds
the pieces the standard library does not ship: the sawtooth function,
finite-period rational functions on the integers, and residues modulo
``1 + x + ... + x**(b-1)`` (a substrate for exact sums over nontrivial
b-th roots of unity).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import NotInvertible

RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def to_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"n/d"`` string to a Fraction.

    Floats are refused on purpose: every value in this package is exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}; expected 'n' or 'n/d'")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"malformed rational {text!r}: zero denominator")
    return Fraction(num, den)


def format_rational(value: Fraction | int) -> str:
    """Canonical ``"n/d"`` rendering (``"n"`` when the denominator is 1)."""
    return str(Fraction(value))


def mod_inverse(a: int, m: int) -> int:
    """Return x in [1, m-1] with a*x = 1 (mod m)."""
    if m < 2:
        raise NotInvertible(f"modulus must be at least 2, got {m}")
    if math.gcd(a, m) != 1:
        raise NotInvertible(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m)


def sawtooth(x: RationalLike) -> Fraction:
    """((x)) = x - floor(x) - 1/2 for non-integral x, and 0 on the integers."""
    x = to_rational(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def _lcm(values: Iterable[int]) -> int:
    return reduce(lambda u, v: u * v // math.gcd(u, v), values, 1)


@dataclass(frozen=True)
class PeriodicRational:
    """A function Z -> Q with a declared period, stored as one period of values.

    ``f(n) = values[n mod period]`` with the nonnegative residue.  The
    declared period is kept as given; call :meth:`canonicalize` to shrink
    it to the minimal one.  Dataclass equality compares representations;
    use :func:`periodic_equal` to compare functions.
    """

    period: int
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        values = tuple(to_rational(v) for v in self.values)
        if self.period < 1:
            raise ValueError(f"period must be positive, got {self.period}")
        if len(values) != self.period:
            raise ValueError(
                f"expected {self.period} values for the declared period, got {len(values)}"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def from_list(cls, values: Sequence[RationalLike]) -> PeriodicRational:
        return cls(len(values), tuple(values))

    @classmethod
    def constant(cls, value: RationalLike) -> PeriodicRational:
        return cls(1, (value,))

    def __call__(self, n: int) -> Fraction:
        return self.values[n % self.period]

    evaluate = __call__

    def resample(self, period: int) -> PeriodicRational:
        """Restate the same function with a declared period that is a multiple of ours."""
        if period % self.period:
            raise ValueError(f"{period} is not a multiple of {self.period}")
        return PeriodicRational(period, tuple(self(n) for n in range(period)))

    def canonicalize(self) -> PeriodicRational:
        p = self.period
        for d in sorted(_divisors(p)):
            if all(self.values[i] == self.values[i % d] for i in range(p)):
                return PeriodicRational(d, self.values[:d])
        return self  # unreachable: d = p always matches

    def shift(self, offset: int) -> PeriodicRational:
        """The function n -> f(n + offset)."""
        return PeriodicRational(self.period, tuple(self(n + offset) for n in range(self.period)))

    def _combine(self, other, op) -> PeriodicRational:
        if not isinstance(other, PeriodicRational):
            other = PeriodicRational.constant(other)
        period = _lcm((self.period, other.period))
        return PeriodicRational(period, tuple(op(self(n), other(n)) for n in range(period)))

    def __add__(self, other) -> PeriodicRational:
        return self._combine(other, lambda u, v: u + v)

    __radd__ = __add__

    def __sub__(self, other) -> PeriodicRational:
        return self._combine(other, lambda u, v: u - v)

    def __rsub__(self, other) -> PeriodicRational:
        return self._combine(other, lambda u, v: v - u)

    def __neg__(self) -> PeriodicRational:
        return PeriodicRational(self.period, tuple(-v for v in self.values))

    def to_json(self) -> dict:
        return {"period": self.period, "values": [format_rational(v) for v in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> PeriodicRational:
        return cls(int(data["period"]), tuple(parse_rational(str(v)) for v in data["values"]))


def _divisors(n: int) -> list[int]:
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
    return out


def periodic_equal(f: PeriodicRational, g: PeriodicRational) -> bool:
    """True iff f and g agree on every integer."""
    period = _lcm((f.period, g.period))
    return all(f(n) == g(n) for n in range(period))


# -- residues modulo 1 + x + ... + x^(b-1) ---------------------------------------

_INT64_SAFE = 1 << 62


def _cyclic_convolve(u: Sequence[int], v: Sequence[int], n: int) -> list[int]:
    """Integer product of u and v modulo x**n - 1."""
    out = [0] * n
    if not u or not v:
        return out
    bound = max(map(abs, u)) * max(map(abs, v)) * min(len(u), len(v))
    if bound < _INT64_SAFE:
        full = np.convolve(np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64))
        for k, c in enumerate(full.tolist()):
            out[k % n] += c
        return out
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                out[(i + j) % n] += ui * vj
    return out


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    while len(num) >= len(den) and num:
        shift = len(num) - len(den)
        c = num[-1] / lead
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        _poly_trim(num)
    return _poly_trim(q), num


def _poly_mul(u: list[Fraction], v: list[Fraction]) -> list[Fraction]:
    if not u or not v:
        return []
    out = [Fraction(0)] * (len(u) + len(v) - 1)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                out[i + j] += ui * vj
    return out


def _poly_sub(u: list[Fraction], v: list[Fraction]) -> list[Fraction]:
    n = max(len(u), len(v))
    out = [(u[i] if i < len(u) else 0) - (v[i] if i < len(v) else 0) for i in range(n)]
    return _poly_trim([Fraction(c) for c in out])


@dataclass(frozen=True)
class CyclotomicResidue:
    """Element of Q[x] / (1 + x + ... + x**(order-1)).

    The modulus vanishes exactly at the nontrivial ``order``-th roots of
    unity, so an element is a simultaneous value at all of them.  Stored
    as ``order - 1`` coefficients, lowest degree first.
    """

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        coeffs = tuple(to_rational(c) for c in self.coeffs)
        if len(coeffs) != self.order - 1:
            raise ValueError(f"expected {self.order - 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_poly(cls, order: int, coeffs: Iterable[RationalLike]) -> CyclotomicResidue:
        """Reduce an arbitrary polynomial (lowest degree first) into the ring."""
        folded = [Fraction(0)] * order
        for k, c in enumerate(coeffs):
            folded[k % order] += to_rational(c)
        top = folded[-1]
        return cls(order, tuple(c - top for c in folded[:-1]))

    @classmethod
    def zero(cls, order: int) -> CyclotomicResidue:
        return cls(order, (Fraction(0),) * (order - 1))

    @classmethod
    def one(cls, order: int) -> CyclotomicResidue:
        return cls.monomial(order, 0)

    @classmethod
    def monomial(cls, order: int, exponent: int, coeff: RationalLike = 1) -> CyclotomicResidue:
        folded = [Fraction(0)] * order
        folded[exponent % order] = to_rational(coeff)
        return cls.from_poly(order, folded)

    @classmethod
    def geometric_inverse(cls, order: int, a: int) -> CyclotomicResidue:
        """Closed form of 1 / (1 - x**a) for gcd(a, order) = 1.

        Uses (1 - z) * sum_j j z**j = -order at every nontrivial root z.
        """
        if order > 1 and math.gcd(a, order) != 1:
            raise NotInvertible(f"1 - x^{a} vanishes at a nontrivial {order}-th root of unity")
        folded = [Fraction(0)] * order
        for j in range(order):
            folded[(a * j) % order] += Fraction(-j, order)
        return cls.from_poly(order, folded)

    def _check(self, other: CyclotomicResidue) -> None:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: CyclotomicResidue) -> CyclotomicResidue:
        self._check(other)
        return CyclotomicResidue(self.order, tuple(u + v for u, v in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: CyclotomicResidue) -> CyclotomicResidue:
        self._check(other)
        return CyclotomicResidue(self.order, tuple(u - v for u, v in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> CyclotomicResidue:
        return CyclotomicResidue(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other: CyclotomicResidue) -> CyclotomicResidue:
        self._check(other)
        if self.order == 1:
            return self
        # clear denominators, convolve over Z, rescale
        du = _lcm(c.denominator for c in self.coeffs)
        dv = _lcm(c.denominator for c in other.coeffs)
        u = [int(c * du) for c in self.coeffs]
        v = [int(c * dv) for c in other.coeffs]
        prod = _cyclic_convolve(u, v, self.order)
        scale = du * dv
        top = prod[-1]
        return CyclotomicResidue(
            self.order, tuple(Fraction(c - top, scale) for c in prod[:-1])
        )

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def invert(self) -> CyclotomicResidue:
        """Multiplicative inverse via the extended Euclidean algorithm over Q[x]."""
        if self.order == 1:
            return self
        modulus = [Fraction(1)] * self.order
        r0, r1 = modulus, _poly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        if not r1:
            raise NotInvertible("zero is not invertible")
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if len(r0) != 1:
            raise NotInvertible(
                f"element shares a factor of degree {len(r0) - 1} with the modulus"
            )
        c = r0[0]
        return CyclotomicResidue.from_poly(self.order, [s / c for s in s0])

    def is_invertible(self) -> bool:
        try:
            self.invert()
        except NotInvertible:
            return False
        return True

    def root_power_sum(self, n: int = 0) -> Fraction:
        """Sum of z**n * p(z) over the nontrivial order-th roots of unity z.

        Power sums over those roots are order-1 for exponents divisible by
        the order and -1 otherwise.
        """
        b = self.order
        if b == 1:
            return Fraction(0)
        k = (-n) % b
        picked = self.coeffs[k] if k < b - 1 else Fraction(0)
        return b * picked - sum(self.coeffs, Fraction(0))
