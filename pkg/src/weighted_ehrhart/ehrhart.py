"""Lattice-point counts of the triangle D_w and their closed forms.

``count_*`` functions enumerate; ``popoviciu_*`` and the quasi-polynomial
evaluate closed formulas.  The two sides are kept independent so one can
check the other.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .arith import PeriodicRational, format_rational, _lcm
from .dedekind import fourier_dedekind_sum
from .errors import InvalidArgs, NegativeDilationWarning
from .singularity import vertex_delta_periodic
from .weights import WeightVector, check_pairwise_coprime


def _negative(t: int) -> bool:
    if t < 0:
        warnings.warn(
            f"negative dilation t={t}: the lattice polygon is empty, returning 0",
            NegativeDilationWarning,
            stacklevel=3,
        )
        return True
    return False


def count_triangle_le(a: int, b: int, t: int) -> int:
    """#{(x, y) in Z_{>=0}^2 : a x + b y <= t}."""
    if math.gcd(a, b) != 1 or a < 1 or b < 1:
        raise InvalidArgs(f"need coprime positive a, b; got {a}, {b}")
    if _negative(t):
        return 0
    return sum((t - b * y) // a + 1 for y in range(t // b + 1))


def _count_line(a: int, b: int, inv_a: int, s: int) -> int:
    # solutions of a x + b y = s with x, y >= 0; x is forced mod b
    x0 = (s * inv_a) % b
    if a * x0 > s:
        return 0
    return (s - a * x0) // (a * b) + 1


def count_simplex_eq(a: int, b: int, c: int, t: int) -> int:
    """#{(x, y, z) in Z_{>=0}^3 : a x + b y + c z = t}, by enumeration over z."""
    check_pairwise_coprime((a, b, c))
    if _negative(t):
        return 0
    inv_a = pow(a, -1, b) if b > 1 else 0
    return sum(_count_line(a, b, inv_a, t - c * z) for z in range(t // c + 1))


def denumerant_table(coins: Sequence[int], tmax: int) -> list[int]:
    """Number of ways to write each t in [0, tmax] as sum coins_i * x_i, x_i >= 0.

    Coin-change dynamic programming; a bulk counting oracle for sweeps.
    """
    if tmax < 0:
        return []
    table = [1] + [0] * tmax
    for c in coins:
        if c < 1:
            raise InvalidArgs(f"coins must be positive, got {c}")
        for t in range(c, tmax + 1):
            table[t] += table[t - c]
    return table


def poly_part(a: int, b: int, c: int, t: int) -> Fraction:
    """Polynomial part t^2/(2abc) + (t/2)(1/ab + 1/ac + 1/bc) + (3(ab+ac+bc) + a^2+b^2+c^2)/(12abc)."""
    num = 6 * t * t + 6 * t * (a + b + c) + 3 * (a * b + a * c + b * c) + a * a + b * b + c * c
    return Fraction(num, 12 * a * b * c)


def popoviciu_2d(a: int, b: int, t: int) -> Fraction:
    """Closed form of #{a x + b y <= t}: poly_{a,1,b}(t) + s_{-t}(a,1;b) + s_{-t}(1,b;a)."""
    if math.gcd(a, b) != 1 or a < 1 or b < 1:
        raise InvalidArgs(f"need coprime positive a, b; got {a}, {b}")
    return (
        poly_part(a, 1, b, t)
        + fourier_dedekind_sum(-t, (a, 1), b)
        + fourier_dedekind_sum(-t, (1, b), a)
    )


def popoviciu_3d(a: int, b: int, c: int, t: int) -> Fraction:
    """Closed form of #{a x + b y + c z = t}: poly plus three Fourier-Dedekind sums."""
    check_pairwise_coprime((a, b, c))
    return (
        poly_part(a, b, c, t)
        + fourier_dedekind_sum(-t, (a, b), c)
        + fourier_dedekind_sum(-t, (b, c), a)
        + fourier_dedekind_sum(-t, (a, c), b)
    )


def virtual_genus(w: WeightVector, t: int) -> Fraction:
    """g_{w,t} = t (t - |w|) / (2 w-bar) + 1."""
    return Fraction(t * (t - w.total), 2 * w.product) + 1


@dataclass(frozen=True)
class QuasiPolynomial:
    """sum_i coefficients[i](d) * d**i with periodic rational coefficients."""

    coefficients: tuple[PeriodicRational, ...]
    weights: Optional[WeightVector] = None

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def period(self) -> int:
        return _lcm(c.period for c in self.coefficients)

    def evaluate(self, d: int) -> Fraction:
        value = Fraction(0)
        for c in reversed(self.coefficients):
            value = value * d + c(d)
        return value

    __call__ = evaluate

    def to_json(self) -> dict:
        out: dict = {}
        if self.weights is not None:
            out["weights"] = list(self.weights.as_tuple())
        out["coefficients"] = [c.to_json() for c in self.coefficients]
        out["period"] = self.period
        return out

    @classmethod
    def from_json(cls, data: dict) -> QuasiPolynomial:
        coeffs = tuple(PeriodicRational.from_json(c) for c in data["coefficients"])
        weights = WeightVector(*data["weights"]) if "weights" in data else None
        qp = cls(coeffs, weights)
        if "period" in data and int(data["period"]) != qp.period:
            raise ValueError(f"declared period {data['period']} != lcm of coefficient periods {qp.period}")
        return qp

    def describe(self) -> str:
        lines = []
        if self.weights is not None:
            lines.append(f"weights: {self.weights}")
        for i in reversed(range(len(self.coefficients))):
            c = self.coefficients[i]
            vals = ", ".join(format_rational(v) for v in c.values)
            lines.append(f"c{i} (period {c.period}): [{vals}]")
        return "\n".join(lines)


@lru_cache(maxsize=256)
def ehrhart_quasipolynomial(w: WeightVector) -> QuasiPolynomial:
    """Eh_w(d) = g_{w, d+|w|} - sum over singular vertices of Delta_P(d + |w|).

    The quadratic and linear coefficients are constant; the constant term
    1 - sum_i Delta_i(d + |w|) is tabulated once over the period w-bar.
    """
    c2 = PeriodicRational.constant(Fraction(1, 2 * w.product))
    c1 = PeriodicRational.constant(Fraction(w.total, 2 * w.product))
    c0 = PeriodicRational.constant(1).resample(w.product)
    for i in range(3):
        c0 = c0 - vertex_delta_periodic(w, i)
    return QuasiPolynomial((c0, c1, c2), w)


def ehrhart_at_multiple(w: WeightVector, k: int) -> Fraction:
    """Eh_w(k w-bar) = k (k w-bar + |w|) / 2 + 1."""
    if k < 0:
        raise InvalidArgs(f"k must be nonnegative, got {k}")
    return Fraction(k * (k * w.product + w.total), 2) + 1
