import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_A, coprime_triples
from weighted_ehrhart.arith import PeriodicRational
from weighted_ehrhart.ehrhart import count_simplex_eq, ehrhart_quasipolynomial, virtual_genus
from weighted_ehrhart.errors import InvalidType, NotNormalized, SmoothPoint
from weighted_ehrhart.singularity import (
    GermLedger,
    GermLedgerEntry,
    NormalizedForm,
    QuotientType,
    combinatorial_invariants,
    count_A,
    delta_at_projective_vertex,
    delta_comb,
    delta_invariant,
    delta_single_blowup,
    delta_table_for_local_type,
    h0_from_genus,
    ledger_check,
    normalize_type,
    numerical_adjunction,
    to_minus_one_form,
    vertex_delta_periodic,
    vertex_type,
)
from weighted_ehrhart.weights import WeightVector

F = Fraction
W237 = WeightVector(2, 3, 7)


class TestTypes:
    @pytest.mark.parametrize(
        "given_type, expected",
        [((7, 2, 3), (7, 2, 3)), ((4, 2, 1), (2, 1, 1)), ((1, 0, 0), (1, 0, 0))],
    )
    def test_normalize_examples(self, given_type, expected):
        assert normalize_type(QuotientType(*given_type)) == QuotientType(*expected)

    @given(st.integers(1, 60), st.integers(-100, 100), st.integers(-100, 100))
    def test_normalize_is_normalized_and_idempotent(self, d, a, b):
        if math.gcd(math.gcd(d, a), b) != 1:
            with pytest.raises(InvalidType):
                QuotientType(d, a, b)
            return
        n = normalize_type(QuotientType(d, a, b))
        assert n.is_normalized
        assert normalize_type(n) == n

    @pytest.mark.parametrize(
        "t, p, m, q", [((7, 2, 3), 7, 3, 2), ((2, 1, 1), 2, 1, 1), ((3, 1, 2), 3, 2, 1)]
    )
    def test_minus_one_form_examples(self, t, p, m, q):
        assert to_minus_one_form(QuotientType(*t)) == NormalizedForm(p=p, q=q, unit=m)

    @given(st.integers(2, 200), st.integers(1, 10**6), st.integers(1, 10**6))
    def test_minus_one_form_invariant(self, d, a, b):
        t = QuotientType(d, a, b) if math.gcd(math.gcd(d, a), b) == 1 else None
        if t is None or not t.is_normalized:
            return
        f = to_minus_one_form(t)
        assert (f.unit * t.a) % d == d - 1
        assert (f.unit * t.b) % d == f.q
        assert math.gcd(f.p, f.q) == 1

    def test_minus_one_form_errors(self):
        with pytest.raises(NotNormalized):
            to_minus_one_form(QuotientType(4, 2, 1))
        with pytest.raises(SmoothPoint):
            to_minus_one_form(QuotientType(1, 0, 0))


class TestCombinatorialInvariants:
    @pytest.mark.parametrize("p, q, r, expected", [(7, 2, 5, 1), (2, 1, 1, 0), (1, 1, 3, 3)])
    def test_count_A_examples(self, p, q, r, expected):
        assert count_A(p, q, r) == expected

    def test_count_A_against_double_loop(self):
        for p in range(1, 10):
            for q in range(1, 10):
                if math.gcd(p, q) == 1:
                    for r in range(0, 25):
                        assert count_A(p, q, r) == brute_A(p, q, r)

    @pytest.mark.parametrize("p, q, r, expected", [(1, 1, 4, F(6)), (7, 2, 5, F(5, 7)), (2, 1, 1, F(-1, 4))])
    def test_delta_comb_examples(self, p, q, r, expected):
        assert delta_comb(p, q, r) == expected

    def test_delta_comb_generalizes_binomial(self):
        for d in range(30):
            assert delta_comb(1, 1, d) == math.comb(d, 2)

    def test_invariants_record(self):
        inv = combinatorial_invariants(7, 2, 5)
        assert (inv.A, inv.delta, inv.Delta) == (1, F(5, 7), F(2, 7))

    @pytest.mark.parametrize("p, q", [(p, q) for p in range(1, 13) for q in range(1, 13) if math.gcd(p, q) == 1])
    def test_agree_at_multiples_of_p(self, p, q):
        for a in range(1, 5):
            assert count_A(p, q, p * a) == delta_comb(p, q, p * a)

    @pytest.mark.parametrize("p, q", [(p, q) for p in range(1, 13) for q in range(1, 13) if math.gcd(p, q) == 1])
    def test_shift_laws(self, p, q):
        for r in range(0, 3 * p + 1):
            for a in range(1, 5):
                r1 = r + p * a
                extra = a * q * r
                assert delta_comb(p, q, r1) - delta_comb(p, q, r) == delta_comb(p, q, r1 - r) + extra
                assert count_A(p, q, r1) - count_A(p, q, r) == count_A(p, q, r1 - r) + extra

    @pytest.mark.parametrize("p, q", [(p, q) for p in range(1, 13) for q in range(1, 13) if math.gcd(p, q) == 1])
    def test_delta_depends_on_r_mod_p(self, p, q):
        for r in range(0, 3 * p + 1):
            base = count_A(p, q, r) - delta_comb(p, q, r)
            for a in range(1, 5):
                r1 = r + p * a
                assert count_A(p, q, r1) - delta_comb(p, q, r1) == base


class TestDelta:
    def test_delta_invariant_examples(self):
        assert delta_invariant(NormalizedForm(2, 1, 1), 1) == F(1, 4)
        form = to_minus_one_form(QuotientType(7, 2, 3))
        assert form.transport(1) == 3
        assert delta_invariant(form, 3) == F(2, 7)
        assert delta_invariant(NormalizedForm(3, 1, 2), 0) == 0
        assert delta_invariant(NormalizedForm(1, 0, 1), 5) == 0

    @given(st.integers(2, 40).flatmap(lambda p: st.tuples(st.just(p), st.integers(1, p - 1))), st.integers(-500, 500))
    def test_delta_periodic_in_k(self, pq, k):
        p, q = pq
        if math.gcd(p, q) != 1:
            return
        form = NormalizedForm(p, q, 1)
        assert delta_invariant(form, k + p) == delta_invariant(form, k)

    @pytest.mark.parametrize(
        "t, expected",
        [
            ((7, 2, 3), [0, F(2, 7), F(3, 7), F(3, 7), F(2, 7), 0, F(4, 7)]),
            ((2, 1, 1), [0, F(1, 4)]),
            ((3, 1, 2), [0, F(1, 3), F(1, 3)]),
        ],
    )
    def test_delta_tables(self, t, expected):
        assert delta_table_for_local_type(QuotientType(*t)) == PeriodicRational.from_list(expected)

    def test_delta_table_of_example_vertex_types(self):
        # vertex P1 of P^2_(2,3,7) is X(3; 7, 2) = X(3; 1, 2)
        assert vertex_type(W237, 1) == QuotientType(3, 1, 2)
        assert vertex_type(W237, 0) == QuotientType(2, 1, 1)
        assert vertex_type(W237, 2) == QuotientType(7, 2, 3)

    def test_delta_table_rejects_non_normalized(self):
        with pytest.raises(NotNormalized):
            delta_table_for_local_type(QuotientType(4, 2, 1))

    @pytest.mark.parametrize("i, D, expected", [(2, 66, F(3, 7)), (0, 12, F(0)), (1, 13, F(1, 3))])
    def test_vertex_examples(self, i, D, expected):
        assert delta_at_projective_vertex(W237, i, D) == expected

    def test_vertex_sum_at_degree_13(self):
        total = sum(delta_at_projective_vertex(W237, i, 13) for i in range(3))
        assert total == virtual_genus(W237, 13) == F(97, 84)

    def test_shifted_example_list(self):
        # Delta_2(d + |w|) as a function of d: the X(7; 2, 3) table shifted by 12 = 5 mod 7
        shifted = vertex_delta_periodic(W237, 2)
        assert shifted == PeriodicRational.from_list([0, F(4, 7), 0, F(2, 7), F(3, 7), F(3, 7), F(2, 7)])
        assert shifted == delta_table_for_local_type(QuotientType(7, 2, 3)).shift(12)

    def test_cross_convention_consistency(self):
        for w in coprime_triples(210, product_bound=210):
            for perm in {w, w[::-1]}:
                wv = WeightVector(*perm)
                for i in range(3):
                    table = delta_table_for_local_type(vertex_type(wv, i))
                    for D in range(wv.product):
                        assert delta_at_projective_vertex(wv, i, D) == table(D)

    def test_virtual_genus_minus_corrections_counts_points(self):
        for w in coprime_triples(60, product_bound=90):
            wv = WeightVector(*w)
            for D in range(wv.total, wv.total + 3 * wv.product + 1):
                value = virtual_genus(wv, D) - sum(delta_at_projective_vertex(wv, i, D) for i in range(3))
                assert value.denominator == 1 and value >= 0
                assert value == count_simplex_eq(*w, D - wv.total)


class TestSingleBlowup:
    @pytest.mark.parametrize(
        "args, expected",
        [((8, 7, 2, 3, 7), F(20, 21)), ((2, 1, 1, 1, 1), F(1)), ((3, 1, 2, 3, 1), F(-1, 4))],
    )
    def test_examples(self, args, expected):
        assert delta_single_blowup(*args) == expected

    def test_example_germ_total(self):
        # x(x^3 + y^2) on X(7; 2, 3): blow-up term plus the smooth-ambient term (3 - 1)/(2*3)
        assert delta_single_blowup(8, 7, 2, 3, 7) + F(3 - 1, 2 * 3) == F(9, 7)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            delta_single_blowup(0, 1, 1, 1, 1)


class TestLedger:
    def test_table1_file(self, table1_path):
        ledger = GermLedger.load(table1_path)
        assert ledger.local_type == QuotientType(7, 2, 3)
        report = ledger_check(ledger.entries, ledger.local_type)
        assert report.passed
        assert [r.expected_Delta for r in report.rows] == [0, F(2, 7), F(3, 7), F(3, 7), F(2, 7), 0, F(4, 7)]

    def test_examples(self):
        t = QuotientType(7, 2, 3)
        ok1 = GermLedgerEntry(k=1, Delta=F(2, 7), delta_P=F(9, 7), kappa_P=1)
        ok6 = GermLedgerEntry(k=6, Delta=F(4, 7), delta_P=F(4, 7), kappa_P=0)
        assert ledger_check([ok1, ok6], t).passed
        bad = GermLedgerEntry(k=1, Delta=F(1, 4), delta_P=F(1, 4), kappa_P=1)
        report = ledger_check([bad], QuotientType(2, 1, 1))
        assert not report.passed
        assert len(report.rows[0].failures) == 1

    def test_wrong_given_Delta_is_reported(self):
        entry = GermLedgerEntry(k=2, Delta=F(2, 7))
        report = ledger_check([entry], QuotientType(7, 2, 3))
        assert not report.passed
        assert "given Delta" in report.rows[0].failures[0]

    def test_kappa_fill_in(self):
        entry = GermLedgerEntry(k=1, delta_P=F(9, 7))
        row = ledger_check([entry], QuotientType(7, 2, 3)).rows[0]
        assert row.passed and row.kappa_filled and row.kappa == 1

    def test_json_round_trip(self, table1_path):
        ledger = GermLedger.load(table1_path)
        assert GermLedger.from_json(ledger.to_json()) == ledger
        assert ledger.entries[1].equation == "x(x^3+y^2)"
        assert ledger.entries[1].branches == 2


class TestAdjunction:
    def test_generic_smooth_curve(self):
        assert numerical_adjunction(W237, 42, 0) == 16 == virtual_genus(W237, 42)

    def test_degree_equal_to_weight_sum(self):
        assert numerical_adjunction(W237, 12, 0) == 1

    def test_plane_cubic(self):
        assert numerical_adjunction(WeightVector(1, 1, 1), 3, 0) == 1

    def test_below_weight_sum_uses_zero_count(self):
        assert numerical_adjunction(W237, 5, 0) == 0

    def test_round_trip(self):
        for d in range(0, 100):
            for kappa in (0, 1, F(3, 2)):
                genus = numerical_adjunction(W237, d, kappa)
                h0 = h0_from_genus(W237, d, genus, kappa)
                expected = ehrhart_quasipolynomial(W237).evaluate(d - 12) if d >= 12 else 0
                assert h0 == expected
