import pytest

from qvira.expr import parse_value
from qvira.families import Family, gen_table
from qvira.field import FieldContext, RF_A, RF_ONE, RF_Q, rf_int
from qvira.presentation import (
    Degenerate,
    DegenerateTable,
    HasZeroDims,
    MissingData,
    Nondegenerate,
    NotConstant,
    ZeroEntry,
    degeneracy_test,
    extract_invariants,
    omega_normalize,
    validate_table,
    verify_relation_suite,
)
from qvira.table import TableDocument

NUMERIC = FieldContext.numeric(2, 3)

EXPECTED_INVARIANTS = {
    Family.I: ("q", "a"),
    Family.II: ("q", "a"),
    Family.III: ("1/q", "a"),
    Family.IV: ("1/q", "a"),
}


def family_table(family, **kw):
    return gen_table(family, RF_A, kw.get("h", 2), kw.get("j", 2), kw.get("k", 3),
                     kw.get("mode", FieldContext.symbolic()))


class TestValidate:
    @pytest.mark.parametrize("family", list(Family))
    def test_family_tables_valid(self, family):
        assert validate_table(family_table(family)) == []

    def test_numeric_family_table_valid(self):
        assert validate_table(family_table(Family.III, mode=NUMERIC)) == []

    def test_all_zero_table_valid(self):
        doc = TableDocument(
            context=FieldContext.symbolic(),
            k_range=(-3, 3),
            dims=(1,) * 7,
            h_range=(-2, 2),
            j_range=(-2, 2),
        )
        assert validate_table(doc) == []

    def test_perturbation_detected_with_witness(self):
        doc = family_table(Family.I)
        index = (1, 1, 0)
        doc.entries[index] = doc.entries[index] * rf_int(2)
        violations = validate_table(doc)
        assert violations
        v = violations[0]
        assert v.lhs != v.rhs
        # the witness instance really involves the perturbed entry
        touched = {
            (v.m, v.n, v.k), (v.h, v.j, v.k + v.m),
            (v.h, v.j, v.k), (v.m, v.n, v.h + v.k),
            (v.h + v.m, v.j + v.n, v.k),
        }
        assert index in touched

    def test_stop_after_caps_collection(self):
        doc = family_table(Family.I)
        doc.entries[(1, 1, 0)] = doc.entries[(1, 1, 0)] * rf_int(2)
        assert len(validate_table(doc, stop_after=1)) == 1

    def test_deleted_entry_detected(self):
        doc = family_table(Family.II)
        del doc.entries[(0, 1, 0)]
        assert validate_table(doc, stop_after=1)


class TestDegeneracy:
    def test_family_table_nondegenerate(self):
        assert degeneracy_test(family_table(Family.IV)) == Nondegenerate()

    def test_missing_up_coefficient(self):
        doc = family_table(Family.I)
        del doc.entries[(1, 0, -1)]
        assert degeneracy_test(doc) == Degenerate(-1)

    def test_dead_degree_reported_first(self):
        doc = family_table(Family.I)
        doc.dims = (1, 1, 0, 1, 1, 1, 1)
        assert degeneracy_test(doc) == HasZeroDims(-1)


class TestOmegaNormalize:
    def test_family_I_fixed(self):
        # family I already has f(1, 0, k) = 1, so the base change is trivial
        doc = family_table(Family.I)
        nt = omega_normalize(doc)
        assert all(s == RF_ONE for s in nt.scalings.values())
        assert nt.entries == doc.entries

    def test_family_II_normalizes_to_family_I(self):
        # family II is family I twisted by the sign character (-1)^m
        nt = omega_normalize(family_table(Family.II))
        reference = family_table(Family.I)
        assert nt.entries == reference.entries

    def test_raising_coefficient_becomes_one(self):
        for family in Family:
            nt = omega_normalize(family_table(family))
            for k in range(-3, 3):
                assert nt.f_omega(1, 0, k) == RF_ONE

    def test_anchor_scaling_is_one(self):
        nt = omega_normalize(family_table(Family.III))
        assert nt.anchor == 0
        assert nt.scalings[0] == RF_ONE

    def test_degenerate_raises(self):
        doc = family_table(Family.I)
        del doc.entries[(1, 0, 1)]
        with pytest.raises(DegenerateTable) as info:
            omega_normalize(doc)
        assert info.value.k == 1

    def test_gauge_invariance(self):
        # rescaling v_k by any nonzero s_k leaves the omega basis unchanged
        doc = family_table(Family.III)
        scale = {k: parse_value("q") ** abs(k) * parse_value("a+1") for k in doc.degrees()}
        rescaled = TableDocument(
            context=doc.context,
            k_range=doc.k_range,
            dims=doc.dims,
            h_range=doc.h_range,
            j_range=doc.j_range,
            entries={
                (h, j, k): value * scale[k + h] / scale[k]
                for (h, j, k), value in doc.entries.items()
            },
        )
        assert omega_normalize(rescaled).entries == omega_normalize(doc).entries


class TestInvariants:
    @pytest.mark.parametrize("family", list(Family))
    def test_family_invariants(self, family):
        nt = omega_normalize(family_table(family))
        inv = extract_invariants(nt)
        b_text, a_text = EXPECTED_INVARIANTS[family]
        assert inv.p == RF_ONE
        assert inv.b == parse_value(b_text)
        assert inv.a == parse_value(a_text)

    def test_numeric_invariants(self):
        nt = omega_normalize(family_table(Family.I, mode=NUMERIC))
        inv = extract_invariants(nt)
        assert inv.p == RF_ONE
        assert inv.b == rf_int(2)
        assert inv.a == rf_int(3)

    def test_nonconstant_ratio_detected(self):
        doc = family_table(Family.I)
        doc.entries[(0, 1, 2)] = doc.entries[(0, 1, 2)] * rf_int(5)
        with pytest.raises(NotConstant) as info:
            extract_invariants(omega_normalize(doc))
        assert info.value.invariant == "b"

    def test_zero_sample_detected(self):
        doc = family_table(Family.I)
        del doc.entries[(0, 1, -2)]
        with pytest.raises(ZeroEntry):
            extract_invariants(omega_normalize(doc))

    def test_tiny_window_rejected(self):
        doc = TableDocument(
            context=FieldContext.symbolic(),
            k_range=(0, 0),
            dims=(1,),
            h_range=(-1, 1),
            j_range=(-1, 1),
        )
        nt = omega_normalize(doc)
        with pytest.raises(MissingData):
            extract_invariants(nt)


class TestRelationSuite:
    NAMES = [
        "raising-power-constancy",
        "adjacent-difference-product",
        "raising-power-ladder",
        "first-level-lift",
        "column-power-law",
        "descent-identity",
        "diagonal-closed-form",
    ]

    @pytest.mark.parametrize("family", list(Family))
    def test_all_relations_pass(self, family):
        nt = omega_normalize(family_table(family))
        reports = verify_relation_suite(nt, extract_invariants(nt))
        assert [r.name for r in reports] == self.NAMES
        for report in reports:
            assert report.status == "pass", report.name
            assert report.checked > 0
            assert not report.failures

    def test_numeric_relations_pass(self):
        nt = omega_normalize(family_table(Family.II, mode=NUMERIC))
        reports = verify_relation_suite(nt, extract_invariants(nt))
        assert all(r.status == "pass" for r in reports)

    def test_narrow_window_reports_skipped(self):
        # h-bound 1 leaves no consecutive raising powers: the ladder is
        # skipped, never silently passed
        nt = omega_normalize(family_table(Family.I, h=1, j=1))
        reports = {r.name: r for r in verify_relation_suite(nt, extract_invariants(nt))}
        assert reports["raising-power-ladder"].status == "skipped"
        assert reports["raising-power-ladder"].checked == 0
        assert reports["column-power-law"].status == "pass"

    def test_perturbation_fails_with_witness(self):
        doc = family_table(Family.I)
        doc.entries[(2, 2, 1)] = doc.entries[(2, 2, 1)] * parse_value("q")
        nt = omega_normalize(doc)
        reports = verify_relation_suite(nt, extract_invariants(nt))
        failing = [r for r in reports if r.status == "fail"]
        assert failing
        first = failing[0].failures[0]
        assert first.lhs != first.rhs
