"""Exact Ehrhart quasi-polynomials of the weighted triangles D_w.

D_w = {x, y, z >= 0 : w0 x + w1 y + w2 z = 1} for pairwise coprime weights.
The count of lattice points in d * D_w is computed in closed form as a
virtual genus minus local corrections at the singular points of the
weighted projective plane P^2_w, alongside the Dedekind and
Fourier-Dedekind sum machinery and brute-force enumeration oracles.
"""

from .arith import (
    CyclotomicResidue,
    PeriodicRational,
    format_rational,
    mod_inverse,
    parse_rational,
    periodic_equal,
    sawtooth,
)
from .dedekind import dedekind_sum_fast, dedekind_sum_naive, fourier_dedekind_sum
from .ehrhart import (
    QuasiPolynomial,
    count_simplex_eq,
    count_triangle_le,
    ehrhart_at_multiple,
    ehrhart_quasipolynomial,
    poly_part,
    popoviciu_2d,
    popoviciu_3d,
    virtual_genus,
)
from .errors import (
    InvalidArgs,
    InvalidType,
    InvalidWeights,
    NegativeDilationWarning,
    NotInvertible,
    NotNormalized,
    SmoothPoint,
)
from .singularity import (
    GermLedger,
    GermLedgerEntry,
    NormalizedForm,
    QuotientType,
    count_A,
    delta_at_projective_vertex,
    delta_comb,
    delta_invariant,
    delta_single_blowup,
    delta_table_for_local_type,
    ledger_check,
    normalize_type,
    numerical_adjunction,
    to_minus_one_form,
)
from .weights import WeightVector

__version__ = "0.1.0"
