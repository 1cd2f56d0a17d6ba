"""Cyclic quotient surface singularities and the correction invariant Delta.

A point of type X(d; a, b) is the quotient of C^2 by the cyclic group of
order d acting with weights (a, b).  For a normalized type we rewrite it
as X(p; -1, q) by rescaling the group generator with a unit m = -a^-1;
the same rescaling sends the invariance degree k of a germ to m*k mod p.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Optional

from .arith import PeriodicRational, RationalLike, format_rational, parse_rational, to_rational
from .errors import InvalidArgs, InvalidType, NotNormalized, SmoothPoint
from .weights import WeightVector


@dataclass(frozen=True)
class QuotientType:
    """Type (d; a, b) of a cyclic quotient singularity; a and b are kept mod d."""

    d: int
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise InvalidType(f"group order must be positive, got {self.d}")
        if math.gcd(math.gcd(self.d, self.a), self.b) != 1:
            raise InvalidType(f"gcd(d, a, b) != 1 for type ({self.d}; {self.a}, {self.b})")
        object.__setattr__(self, "a", self.a % self.d)
        object.__setattr__(self, "b", self.b % self.d)

    @property
    def is_normalized(self) -> bool:
        return math.gcd(self.d, self.a) == 1 and math.gcd(self.d, self.b) == 1

    def as_list(self) -> list[int]:
        return [self.d, self.a, self.b]

    def __str__(self) -> str:
        return f"X({self.d}; {self.a}, {self.b})"


@dataclass(frozen=True)
class NormalizedForm:
    """The presentation X(p; -1, q) of a normalized type, with its rescaling unit.

    ``(unit * a, unit * b) = (-1, q) mod p`` for the original weights (a, b).
    """

    p: int
    q: int
    unit: int

    def transport(self, k: int) -> int:
        """Invariance degree in the (p; -1, q) presentation of a degree-k germ."""
        return (self.unit * k) % self.p


@dataclass(frozen=True)
class CombinatorialInvariants:
    p: int
    q: int
    r: int
    A: int
    delta: Fraction

    @property
    def Delta(self) -> Fraction:
        return self.A - self.delta


def normalize_type(t: QuotientType) -> QuotientType:
    """X(d; a, b) -> X(d / ((d,a)(d,b)); a / (d,a), b / (d,b))."""
    ga = math.gcd(t.d, t.a)
    gb = math.gcd(t.d, t.b)
    d = t.d // (ga * gb)
    return QuotientType(d, (t.a // ga) % d, (t.b // gb) % d)


def to_minus_one_form(t: QuotientType) -> NormalizedForm:
    if not t.is_normalized:
        raise NotNormalized(f"{t} is not normalized; call normalize_type first")
    if t.d == 1:
        raise SmoothPoint(f"{t} is a smooth point")
    unit = (-pow(t.a, -1, t.d)) % t.d
    return NormalizedForm(p=t.d, q=(unit * t.b) % t.d, unit=unit)


def count_A(p: int, q: int, r: int) -> int:
    """#{(i, j) : i, j >= 1, p*i + q*j <= q*r}."""
    bound = q * r
    total = 0
    i = 1
    while p * i + q <= bound:
        total += (bound - p * i) // q
        i += 1
    return total


def delta_comb(p: int, q: int, r: int) -> Fraction:
    """r (q r - p - q + 1) / (2p); reduces to binomial(r, 2) at p = q = 1."""
    return Fraction(r * (q * r - p - q + 1), 2 * p)


def combinatorial_invariants(p: int, q: int, r: int) -> CombinatorialInvariants:
    return CombinatorialInvariants(p, q, r, count_A(p, q, r), delta_comb(p, q, r))


@lru_cache(maxsize=None)
def _delta_pqr(p: int, q: int, r: int) -> Fraction:
    return count_A(p, q, r) - delta_comb(p, q, r)


def delta_invariant(form: NormalizedForm, k: int) -> Fraction:
    """Delta(k) = A_r - delta_r on X(p; -1, q) with r = q^-1 k mod p.

    ``k`` is the invariance degree in the (p; -1, q) presentation; use
    :meth:`NormalizedForm.transport` to get there from another one.
    """
    if form.p == 1:
        return Fraction(0)
    r = (pow(form.q, -1, form.p) * k) % form.p
    return _delta_pqr(form.p, form.q, r)


def delta_table_for_local_type(t: QuotientType) -> PeriodicRational:
    """Delta indexed by the invariance degree k in the presentation (d; a, b) itself."""
    if not t.is_normalized:
        raise NotNormalized(
            f"{t} is not normalized; the degree transport through normalization is undefined"
        )
    if t.d == 1:
        return PeriodicRational.constant(0)
    form = to_minus_one_form(t)
    return PeriodicRational(t.d, tuple(delta_invariant(form, form.transport(k)) for k in range(t.d)))


def vertex_type(w: WeightVector, i: int) -> QuotientType:
    """Local type X(w_i; w_{i+1}, w_{i+2}) at the i-th coordinate vertex."""
    return QuotientType(w[i], w[i + 1], w[i + 2])


def delta_at_projective_vertex(w: WeightVector, i: int, D: int) -> Fraction:
    """Delta at vertex i of P^2_w for a curve of degree D.

    Works directly with q_i = -w_{i+1}^-1 w_{i+2} and r_i = w_{i+2}^-1 D
    (mod w_i), without going through :class:`QuotientType`.
    """
    p = w[i]
    if p == 1:
        return Fraction(0)
    q = (-pow(w[i + 1], -1, p) * w[i + 2]) % p
    r = (pow(w[i + 2], -1, p) * D) % p
    return _delta_pqr(p, q, r)


def vertex_delta_periodic(w: WeightVector, i: int) -> PeriodicRational:
    """The periodic function d -> Delta_i(d + |w|), of period w_i."""
    p = w[i]
    return PeriodicRational(p, tuple(delta_at_projective_vertex(w, i, d + w.total) for d in range(p)))


def delta_single_blowup(nu: int, d: int, p: int, q: int, e: int) -> Fraction:
    """Contribution nu (nu - p - q + e) / (2 d p q) of one (p, q)-blow-up to delta."""
    for name, v in (("nu", nu), ("d", d), ("p", p), ("q", q), ("e", e)):
        if v < 1:
            raise ValueError(f"{name} must be positive, got {v}")
    return Fraction(nu * (nu - p - q + e), 2 * d * p * q)


# -- germ ledger --------------------------------------------------------------


def _opt_rational(value) -> Optional[Fraction]:
    return None if value is None else to_rational(value)


@dataclass(frozen=True)
class GermLedgerEntry:
    """Local data of a generic germ of invariance degree k at a quotient point."""

    k: int
    Delta: Optional[Fraction] = None
    delta_P: Optional[Fraction] = None
    kappa_P: Optional[Fraction] = None
    branches: Optional[int] = None
    equation: Optional[str] = None
    point_label: str = ""

    def __post_init__(self) -> None:
        for name in ("Delta", "delta_P", "kappa_P"):
            object.__setattr__(self, name, _opt_rational(getattr(self, name)))
        if not self.point_label:
            object.__setattr__(self, "point_label", f"k={self.k}")

    def to_json(self) -> dict:
        out: dict = {"k": self.k}
        if self.point_label != f"k={self.k}":
            out["label"] = self.point_label
        for key, value in (("Delta", self.Delta), ("delta", self.delta_P), ("kappa", self.kappa_P)):
            if value is not None:
                out[key] = format_rational(value)
        if self.branches is not None:
            out["branches"] = self.branches
        if self.equation is not None:
            out["equation"] = self.equation
        return out

    @classmethod
    def from_json(cls, data: dict) -> GermLedgerEntry:
        def rat(key: str) -> Optional[Fraction]:
            v = data.get(key)
            return None if v is None else parse_rational(str(v))

        branches = data.get("branches")
        return cls(
            k=int(data["k"]),
            Delta=rat("Delta"),
            delta_P=rat("delta"),
            kappa_P=rat("kappa"),
            branches=None if branches is None else int(branches),
            equation=data.get("equation"),
            point_label=data.get("label", ""),
        )


@dataclass(frozen=True)
class GermLedger:
    local_type: QuotientType
    entries: tuple[GermLedgerEntry, ...]

    def to_json(self) -> dict:
        return {
            "local_type": self.local_type.as_list(),
            "entries": [e.to_json() for e in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> GermLedger:
        try:
            d, a, b = (int(x) for x in data["local_type"])
            entries = tuple(GermLedgerEntry.from_json(e) for e in data["entries"])
        except (KeyError, TypeError, AttributeError) as exc:
            raise InvalidArgs(f"malformed ledger: {exc!r}") from None
        return cls(QuotientType(d, a, b), entries)

    @classmethod
    def load(cls, path: str | Path) -> GermLedger:
        return cls.from_json(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class LedgerRow:
    entry: GermLedgerEntry
    expected_Delta: Fraction
    kappa: Optional[Fraction]
    kappa_filled: bool
    failures: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "k": self.entry.k,
            "label": self.entry.point_label,
            "Delta": format_rational(self.expected_Delta),
            "delta": None if self.entry.delta_P is None else format_rational(self.entry.delta_P),
            "kappa": None if self.kappa is None else format_rational(self.kappa),
            "kappa_filled": self.kappa_filled,
            "status": "pass" if self.passed else "fail",
            "failures": list(self.failures),
        }


@dataclass(frozen=True)
class LedgerReport:
    local_type: QuotientType
    rows: tuple[LedgerRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_json(self) -> dict:
        return {
            "local_type": self.local_type.as_list(),
            "passed": self.passed,
            "rows": [row.to_json() for row in self.rows],
        }


def ledger_check(entries: Iterable[GermLedgerEntry], local_type: QuotientType) -> LedgerReport:
    """Check Delta(k) = delta - kappa for every entry against the computed Delta table.

    A supplied Delta must also match the table.  Entries with delta but no
    kappa get kappa filled in as delta - Delta(k).  Inconsistencies are
    reported per row rather than raised.
    """
    table = delta_table_for_local_type(local_type)
    rows = []
    for entry in entries:
        expected = table(entry.k)
        failures = []
        if entry.Delta is not None and entry.Delta != expected:
            failures.append(
                f"given Delta {format_rational(entry.Delta)} != computed {format_rational(expected)}"
            )
        kappa, filled = entry.kappa_P, False
        if entry.delta_P is not None:
            if kappa is None:
                kappa, filled = entry.delta_P - expected, True
            elif entry.delta_P - kappa != expected:
                failures.append(
                    f"delta - kappa = {format_rational(entry.delta_P - kappa)}"
                    f" != Delta = {format_rational(expected)}"
                )
        rows.append(LedgerRow(entry, expected, kappa, filled, tuple(failures)))
    return LedgerReport(local_type, tuple(rows))


# -- numerical adjunction -----------------------------------------------------


def _ehrhart_at(w: WeightVector, n: int) -> Fraction:
    from .ehrhart import ehrhart_quasipolynomial

    if n < 0:
        return Fraction(0)
    return ehrhart_quasipolynomial(w).evaluate(n)


def numerical_adjunction(w: WeightVector, d: int, kappa_sum: RationalLike) -> Fraction:
    """Genus of a degree-d curve: h^0(O(d - |w|)) minus the summed kappa invariants."""
    return _ehrhart_at(w, d - w.total) - to_rational(kappa_sum)


def h0_from_genus(w: WeightVector, d: int, genus: RationalLike, kappa_sum: RationalLike) -> Fraction:
    """Inverse bookkeeping: h^0(O(d - |w|)) = genus + sum of kappa."""
    return to_rational(genus) + to_rational(kappa_sum)
