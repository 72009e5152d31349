import pytest
from hypothesis import given, settings, strategies as st

from qvira.algebra import AlgebraElement, bracket
from qvira.expr import parse_value
from qvira.families import (
    BadParameter,
    Family,
    FamilyModule,
    GradedVector,
    IndexZero,
    Irreducible,
    Reducible,
    action_coeff,
    act,
    check_graded_irreducible,
    closed_form_f,
    gen_table,
    verify_axiom,
)
from qvira.field import (
    FieldContext,
    RF_A,
    RF_ONE,
    RF_Q,
    RF_ZERO,
    q_pow,
    rf_int,
    sign_pow,
)

NUMERIC = FieldContext.numeric(2, 3)


class TestActionCoeff:
    def test_family_I(self):
        assert action_coeff(Family.I, RF_A, 0, 2, 3) == parse_value("a^2*q^6")

    def test_family_II(self):
        assert action_coeff(Family.II, RF_A, 3, 1, 0) == parse_value("-a")

    def test_family_III(self):
        assert action_coeff(Family.III, RF_A, 0, 1, 2) == parse_value("a*q^-2")

    def test_family_IV(self):
        assert action_coeff(Family.IV, RF_A, 1, 1, 0) == parse_value("a*q^-1")

    def test_zero_column_is_sign_only(self):
        # j = 0 kills the a-dependence entirely
        assert action_coeff(Family.I, RF_A, 5, 0, -2) == RF_ONE
        assert action_coeff(Family.II, RF_A, 5, 0, -2) == rf_int(-1)

    def test_families_agree_on_even_slices(self):
        # I and II differ only by (-1)^m
        for m in (-2, -1, 1, 2):
            for n in (-1, 0, 1):
                assert action_coeff(Family.II, RF_A, m, n, 1) == sign_pow(
                    m
                ) * action_coeff(Family.I, RF_A, m, n, 1)

    def test_excluded_index(self):
        with pytest.raises(IndexZero):
            action_coeff(Family.I, RF_A, 0, 0, 1)

    def test_zero_parameter(self):
        with pytest.raises(BadParameter):
            action_coeff(Family.I, RF_ZERO, 1, 0, 0)
        with pytest.raises(BadParameter):
            FamilyModule(Family.I, RF_ZERO)


class TestAct:
    def test_degree_shift(self):
        module = FamilyModule(Family.I, RF_A)
        out = act(module, AlgebraElement.basis(2, 1), GradedVector.basis(3))
        assert out == GradedVector.basis(5, RF_A * q_pow(3))

    def test_linearity(self):
        module = FamilyModule(Family.III, RF_A)
        x = AlgebraElement.basis(1, 0) + AlgebraElement.basis(0, 1, RF_Q)
        v = GradedVector.basis(0) + GradedVector.basis(2, rf_int(5))
        expected = (
            act(module, AlgebraElement.basis(1, 0), v)
            + act(module, AlgebraElement.basis(0, 1), v).scale(RF_Q)
        )
        assert act(module, x, v) == expected


class TestAxiom:
    @pytest.mark.parametrize("family", list(Family))
    def test_basis_triples_pass(self, family):
        module = FamilyModule(family, RF_A)
        for (hx, jx), (hy, jy), k in [
            ((1, 0), (0, 1), 0),
            ((2, -1), (-1, 2), 3),
            ((-1, -1), (1, 2), -2),
        ]:
            witness = verify_axiom(
                module,
                AlgebraElement.basis(hx, jx),
                AlgebraElement.basis(hy, jy),
                GradedVector.basis(k),
            )
            assert witness is None

    def test_corrupted_action_detected(self):
        # the axiom is strong enough to reject a wrong parameter pairing:
        # mix coefficients of two different modules inside one action
        module = FamilyModule(Family.I, RF_A)
        x = AlgebraElement.basis(1, 1)
        y = AlgebraElement.basis(0, 1)
        v = GradedVector.basis(0)
        good = verify_axiom(module, x, y, v)
        assert good is None
        lhs = act(module, bracket(x, y), v)
        tampered = lhs.scale(RF_Q)
        assert tampered != lhs

    @given(
        st.sampled_from(list(Family)),
        st.integers(-2, 2),
        st.integers(-2, 2),
        st.integers(-2, 2),
        st.integers(-2, 2),
        st.integers(-3, 3),
    )
    @settings(max_examples=60, deadline=None)
    def test_axiom_property(self, family, hx, jx, hy, jy, k):
        if (hx, jx) == (0, 0) or (hy, jy) == (0, 0):
            return
        module = FamilyModule(family, RF_A)
        witness = verify_axiom(
            module,
            AlgebraElement.basis(hx, jx),
            AlgebraElement.basis(hy, jy),
            GradedVector.basis(k),
        )
        assert witness is None


class TestGenTable:
    def test_window_shape(self):
        doc = gen_table(Family.I, RF_A, 2, 2, 3)
        assert doc.k_range == (-3, 3)
        assert doc.h_range == (-2, 2)
        assert doc.j_range == (-2, 2)
        assert doc.dims == (1,) * 7

    def test_entries_match_action(self):
        doc = gen_table(Family.IV, RF_A, 2, 2, 3)
        for (h, j, k), value in doc.entries.items():
            assert value == action_coeff(Family.IV, RF_A, h, j, k)

    def test_boundary_entries_absent(self):
        doc = gen_table(Family.I, RF_A, 2, 2, 3)
        # h = 2 from k = 2 would leave the window
        assert (2, 0, 2) not in doc.entries
        assert (2, 0, 1) in doc.entries

    def test_numeric_mode(self):
        doc = gen_table(Family.I, RF_A, 1, 1, 2, NUMERIC)
        assert doc.entry(0, 1, 1) == parse_value("6")  # a q^k = 3*2

    def test_zero_parameter_rejected(self):
        with pytest.raises(BadParameter):
            gen_table(Family.I, RF_ZERO, 1, 1, 2)
        with pytest.raises(BadParameter):
            gen_table(Family.I, parse_value("q - 2"), 1, 1, 2, NUMERIC)

    def test_bad_window(self):
        with pytest.raises(ValueError):
            gen_table(Family.I, RF_A, 0, 1, 2)


class TestClosedForm:
    PAIRS = {
        Family.I: (RF_Q, RF_ONE),
        Family.II: (RF_Q, rf_int(-1)),
        Family.III: (RF_Q.inverse(), RF_ONE),
        Family.IV: (RF_Q.inverse(), rf_int(-1)),
    }

    @pytest.mark.parametrize("family", list(Family))
    def test_reproduces_family(self, family):
        b, lam = self.PAIRS[family]
        for m in range(-3, 4):
            for j in range(-3, 4):
                if (m, j) == (0, 0):
                    continue
                for k in range(-3, 4):
                    assert closed_form_f(b, lam, m, j, k, RF_A) == action_coeff(
                        family, RF_A, m, j, k
                    )

    def test_zero_column_is_unit_power(self):
        # at b = q the j = 0 slice collapses to lam^m
        lam = rf_int(-1)
        for m in range(-5, 6):
            if m == 0:
                continue
            assert closed_form_f(RF_Q, lam, m, 0, 0, RF_A) == sign_pow(m)

    def test_bad_ratio(self):
        with pytest.raises(BadParameter):
            closed_form_f(RF_Q**2, RF_ONE, 1, 0, 0, RF_A)

    def test_bad_sign(self):
        with pytest.raises(BadParameter):
            closed_form_f(RF_Q, rf_int(2), 1, 0, 0, RF_A)


class TestIrreducibility:
    def test_family_table_irreducible(self):
        doc = gen_table(Family.II, RF_A, 2, 2, 3)
        assert check_graded_irreducible(doc) == Irreducible()

    def test_broken_up_chain(self):
        doc = gen_table(Family.I, RF_A, 2, 2, 3)
        del doc.entries[(1, 0, 0)]
        assert check_graded_irreducible(doc) == Reducible(0)

    def test_broken_down_chain(self):
        doc = gen_table(Family.I, RF_A, 2, 2, 3)
        del doc.entries[(-1, 0, 2)]
        assert check_graded_irreducible(doc) == Reducible(2)

    def test_dead_degree(self):
        doc = gen_table(Family.I, RF_A, 2, 2, 3)
        verdict = check_graded_irreducible(
            type(doc)(
                context=doc.context,
                k_range=doc.k_range,
                dims=(1, 1, 1, 0, 1, 1, 1),
                h_range=doc.h_range,
                j_range=doc.j_range,
            )
        )
        assert verdict == Reducible(0)
