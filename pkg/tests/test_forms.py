import random
from fractions import Fraction

import pytest
from conftest import minor_rank, random_fraction
from hypothesis import given, settings
from hypothesis import strategies as st

from doubleline.errors import InvalidInputError, StructuralError
from doubleline.forms import (
    BinaryQuadratic,
    FormTuple,
    HomogeneousForm,
    conic_rank,
    content_normalize,
    divide_by_linear,
    dot,
    hadamard,
    line_kernel_basis,
    line_tangent_to_conic,
    monomials_of_degree,
    parse_form,
    polar_value,
    polarization_matrix,
    render_form,
    restrict,
)

X0 = HomogeneousForm.variable(3, 0)
X1 = HomogeneousForm.variable(3, 1)
X2 = HomogeneousForm.variable(3, 2)

fractions_st = st.fractions(min_value=-6, max_value=6, max_denominator=6)


def form_st(num_vars: int, degree: int, min_terms: int = 0):
    monos = monomials_of_degree(num_vars, degree)
    return st.dictionaries(
        st.sampled_from(monos), fractions_st, min_size=min_terms, max_size=len(monos)
    ).map(lambda terms: HomogeneousForm(num_vars, degree, terms))


def linear_st(num_vars: int):
    return st.tuples(*([fractions_st] * num_vars)).map(HomogeneousForm.linear)


def nonzero_linear_st(num_vars: int):
    return linear_st(num_vars).filter(lambda f: not f.is_zero())


class TestAddMul:
    def test_additive_inverse(self):
        f = X0**4
        assert (f + (-f)) == HomogeneousForm.zero(3, 4)
        assert (f + (-f)).terms == {}

    def test_like_terms(self):
        f = X0**2 * X2**2
        assert f + 3 * f == 4 * f

    def test_disjoint_supports(self):
        assert (X0**4 + X1**4) + X2**4 == parse_form("x0^4 + x1^4 + x2^4", 3)

    def test_degree_mismatch_rejected(self):
        with pytest.raises(StructuralError):
            X0**2 + X0**3

    def test_conic_times_squared_line(self):
        conic = parse_form("6*x0^2 + 6*x0*x1 + 3*x1^2 + x2^2", 3)
        product = X2**2 * conic
        assert product == parse_form(
            "6*x0^2*x2^2 + 6*x0*x1*x2^2 + 3*x1^2*x2^2 + x2^4", 3
        )

    def test_unit_and_plain_product(self):
        f = parse_form("x0^2 + 2*x1*x2", 3)
        assert HomogeneousForm.constant(3, 1) * f == f
        assert X0 * X1 == parse_form("x0*x1", 3)

    @given(form_st(3, 2), form_st(3, 2), form_st(3, 1))
    def test_distributive(self, f, g, h):
        assert (f + g) * h == f * h + g * h

    @given(form_st(3, 1), form_st(3, 2))
    def test_commutative(self, f, g):
        assert f * g == g * f

    @given(form_st(2, 1), form_st(2, 1), form_st(2, 2))
    def test_associative(self, f, g, h):
        assert (f * g) * h == f * (g * h)


class TestPow:
    def test_binomial(self):
        assert (X0 + X2) ** 4 == parse_form(
            "x0^4 + 4*x0^3*x2 + 6*x0^2*x2^2 + 4*x0*x2^3 + x2^4", 3
        )

    def test_single_variable(self):
        assert X0**4 == parse_form("x0^4", 3)

    def test_multinomial_square(self):
        assert (X0 + X1 + X2) ** 2 == parse_form(
            "x0^2 + x1^2 + x2^2 + 2*x0*x1 + 2*x0*x2 + 2*x1*x2", 3
        )

    @settings(max_examples=200)
    @given(linear_st(3))
    def test_fourth_power_matches_repeated_mul(self, l):
        square = l * l
        assert l**4 == square * square


class TestTuples:
    def test_dot_of_ones_with_fourth_powers(self):
        lines = [
            HomogeneousForm.linear(c)
            for c in [(1, 0, 0), (1, 0, 1), (1, 0, -1), (1, 1, 0), (1, 1, 1), (1, 1, -1), (1, 2, 0)]
        ]
        tup = FormTuple(tuple(lines)).power(4)
        ones = FormTuple.scalars([1] * 7, 3)
        total = HomogeneousForm.zero(3, 4)
        for f in lines:
            total = total + f**4
        assert dot(ones, tup) == total

    def test_hadamard_scalars(self):
        t = hadamard(FormTuple.scalars([2, 3], 2), FormTuple((HomogeneousForm.variable(2, 0), HomogeneousForm.variable(2, 1))))
        assert t[0] == 2 * HomogeneousForm.variable(2, 0)
        assert t[1] == 3 * HomogeneousForm.variable(2, 1)

    def test_dot_cancellation(self):
        f = FormTuple.scalars([1, -1], 3)
        g = FormTuple((X0**4, X0**4))
        assert dot(f, g).is_zero()

    def test_length_mismatch(self):
        with pytest.raises(StructuralError):
            dot(FormTuple.scalars([1, 2], 3), FormTuple.scalars([1, 2, 3], 3))

    @given(
        st.lists(fractions_st, min_size=3, max_size=3),
        st.lists(form_st(2, 1), min_size=3, max_size=3),
        st.lists(form_st(2, 2), min_size=3, max_size=3),
    )
    def test_hadamard_dot_bridge(self, scalars, gs, hs):
        f = FormTuple.scalars(scalars, 2)
        g = FormTuple(tuple(gs))
        h = FormTuple(tuple(hs))
        assert dot(hadamard(f, g), h) == dot(f, hadamard(g, h))


class TestEvaluate:
    def test_monomial(self):
        assert (X0**2 * X2**2).evaluate((1, 0, 2)) == 4

    def test_binary_conic(self):
        # direct substitution oracle: 6 - 6 + 3 = 3
        f = parse_form("6*x0^2 + 6*x0*x1 + 3*x1^2", 2)
        assert f.evaluate((1, -1)) == 3

    def test_zero_form(self):
        assert HomogeneousForm.zero(3, 4).evaluate((5, 7, 9)) == 0

    def test_tuple_entrywise_evaluation(self):
        L = FormTuple((HomogeneousForm.linear((1, 2)), HomogeneousForm.linear((0, -1))))
        assert L.values_at((3, Fraction(1, 2))) == (4, Fraction(-1, 2))


class TestRestrict:
    def test_reference_conic(self):
        q = parse_form("6*x0^2 + 6*x0*x1 + 3*x1^2 + x2^2", 3)
        assert restrict(q, X2) == parse_form("6*x0^2 + 6*x0*x1 + 3*x1^2", 2)

    def test_double_line_restricts_to_zero(self):
        q = parse_form("x0^2 + x1^2", 3)
        assert restrict(X2**2 * q, X2).is_zero()

    def test_linear_form(self):
        l = HomogeneousForm.linear((1, Fraction(5, 2), 7))
        assert restrict(l, X2) == HomogeneousForm.linear((1, Fraction(5, 2)))

    def test_zero_line_rejected(self):
        with pytest.raises(InvalidInputError):
            restrict(X0**2, HomogeneousForm.zero(3, 1))

    def test_kernel_basis_vanishes_on_line(self):
        rng = random.Random(7)
        for _ in range(25):
            coeffs = [random_fraction(rng) for _ in range(3)]
            if all(c == 0 for c in coeffs):
                continue
            line = HomogeneousForm.linear(coeffs)
            b0, b1 = line_kernel_basis(line)
            assert line.evaluate(b0) == 0
            assert line.evaluate(b1) == 0

    @given(form_st(3, 2), form_st(3, 2), nonzero_linear_st(3))
    def test_ring_homomorphism(self, f, g, line):
        assert restrict(f * g, line) == restrict(f, line) * restrict(g, line)


class TestPolarization:
    def test_rank_one_for_pure_power(self):
        pm = polarization_matrix(X0**4, 2)
        assert pm.rank() == 1
        image = pm.apply(HomogeneousForm(3, 2, {(2, 0, 0): 1}))
        assert image == X0**2
        # image of any tensor stays proportional to x0^2
        image2 = pm.apply(HomogeneousForm(3, 2, {(1, 1, 0): 2, (0, 0, 2): 5}))
        assert image2.is_zero() or content_normalize(image2)[1] == X0**2

    def test_unit_quadric_gives_identity(self):
        pm = polarization_matrix(parse_form("x0^2 + x1^2 + x2^2", 3), 1)
        from doubleline.linalg import RationalMatrix

        assert pm.matrix == RationalMatrix.identity(3)

    def test_rank_against_minor_oracle(self):
        conic = parse_form("6*x0^2 + 6*x0*x1 + 3*x1^2 + x2^2", 3)
        quartic = X2**2 * conic
        pm = polarization_matrix(quartic, 2)
        oracle = minor_rank(pm.matrix.row_list())
        assert pm.rank() == oracle == 4
        pm1 = polarization_matrix(conic, 1)
        assert pm1.rank() == minor_rank(pm1.matrix.row_list()) == 3

    def test_transpose_up_to_multinomial_rescaling(self):
        from doubleline.forms import multinomial

        rng = random.Random(3)
        monos4 = monomials_of_degree(3, 4)
        terms = {m: random_fraction(rng) for m in monos4}
        f = HomogeneousForm(3, 4, terms)
        m13 = polarization_matrix(f, 1)
        m31 = polarization_matrix(f, 3)
        for r, s in enumerate(m13.row_monomials):
            for c, u in enumerate(m13.col_monomials):
                lhs = m13.matrix[r, c] / multinomial(3, s)
                rhs = m31.matrix[c, r] / multinomial(1, u)
                assert lhs == rhs

    @settings(max_examples=50)
    @given(nonzero_linear_st(2), st.integers(0, 3), st.integers(0, 3))
    def test_power_contraction_is_evaluation(self, l, source_deg, extra):
        total = source_deg + extra
        pm = polarization_matrix(l**total, source_deg)
        if source_deg:
            assert pm.rank() == 1
        tensor = HomogeneousForm(2, source_deg, {m: 1 for m in monomials_of_degree(2, source_deg)})
        expected = tensor.evaluate(l.linear_coefficients()) * l**extra
        assert pm.apply(tensor) == expected

    @given(form_st(3, 4), st.tuples(fractions_st, fractions_st, fractions_st))
    def test_diagonal_polarization_reproduces_value(self, f, v):
        assert polar_value(f, [v, v, v, v]) == f.evaluate(v)


def random_invertible_3x3(rng):
    from conftest import determinant

    while True:
        rows = [[random_fraction(rng, 4, 3) for _ in range(3)] for _ in range(3)]
        if determinant([row[:] for row in rows]) != 0:
            return rows


def apply_change(q, rows):
    images = [
        HomogeneousForm.linear(tuple(rows[i][j] for i in range(3)))
        for j in range(3)
    ]
    return q.substitute(images)


class TestConics:
    def test_reference_conic_rank(self):
        assert conic_rank(parse_form("6*x0^2 + 6*x0*x1 + 3*x1^2 + x2^2", 3)) == 3

    def test_double_line_rank(self):
        assert conic_rank(X2**2) == 1

    def test_line_pair_rank(self):
        assert conic_rank(X2 * X0) == 2

    def test_rank_invariant_under_coordinate_changes(self):
        rng = random.Random(11)
        for q_text, expected in [
            ("6*x0^2 + 6*x0*x1 + 3*x1^2 + x2^2", 3),
            ("x2^2", 1),
            ("x0*x2", 2),
        ]:
            q = parse_form(q_text, 3)
            for _ in range(20):
                rows = random_invertible_3x3(rng)
                assert conic_rank(apply_change(q, rows)) == expected

    def test_not_tangent_reference(self):
        q = parse_form("6*x0^2 + 6*x0*x1 + 3*x1^2 + x2^2", 3)
        flag, point = line_tangent_to_conic(X2, q)
        assert flag is False and point is None
        restricted = BinaryQuadratic.from_form(restrict(q, X2))
        assert restricted.discriminant() == 6 * 6 - 4 * 6 * 3 == -36

    def test_tangent_with_contact_point(self):
        q = X0 * X2 - X1 * X1
        flag, point = line_tangent_to_conic(X2, q)
        assert flag is True
        assert point == (1, 0)

    def test_line_divides_conic(self):
        flag, point = line_tangent_to_conic(X2, X2 * X0)
        assert flag is True and point is None

    def test_invalid_inputs(self):
        q = X0 * X2
        with pytest.raises(InvalidInputError):
            line_tangent_to_conic(HomogeneousForm.zero(3, 1), q)
        with pytest.raises(InvalidInputError):
            line_tangent_to_conic(X2, HomogeneousForm.zero(3, 2))

    def test_flag_invariant_under_line_preserving_changes(self):
        rng = random.Random(13)
        for q_text in ["6*x0^2 + 6*x0*x1 + 3*x1^2 + x2^2", "x0*x2 - x1^2"]:
            q = parse_form(q_text, 3)
            expected = line_tangent_to_conic(X2, q)[0]
            count = 0
            while count < 10:
                rows = random_invertible_3x3(rng)
                # the substitution maps x_j to sum_i rows[i][j]*x_i, so fixing
                # x2 = 0 setwise means zeroing the last column above the corner
                rows[0][2] = rows[1][2] = Fraction(0)
                if rows[2][2] == 0 or minor_rank_2x2(rows) == 0:
                    continue
                changed = apply_change(q, rows)
                assert line_tangent_to_conic(X2, changed)[0] is expected
                count += 1


def minor_rank_2x2(rows):
    return 1 if rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0] != 0 else 0


class TestDivision:
    def test_exact_division_invariant(self):
        rng = random.Random(17)
        for _ in range(50):
            terms = {
                m: random_fraction(rng)
                for m in rng.sample(monomials_of_degree(3, 4), 6)
            }
            f = HomogeneousForm(3, 4, terms)
            coeffs = [random_fraction(rng) for _ in range(3)]
            if all(c == 0 for c in coeffs):
                continue
            line = HomogeneousForm.linear(coeffs)
            quotient, remainder = divide_by_linear(f, line)
            assert line * quotient + remainder == f
            pivot = next(i for i, c in enumerate(coeffs) if c != 0)
            assert all(m[pivot] == 0 for m in remainder.terms)


class TestRendering:
    def test_reference_rendering(self):
        q = parse_form("6*x0^2 + 6*x0*x1 + 3*x1^2 + x2^2", 3)
        assert render_form(q) == "6*x0^2 + 6*x0*x1 + 3*x1^2 + x2^2"

    def test_negative_and_unit_coefficients(self):
        f = HomogeneousForm(3, 2, {(2, 0, 0): 1, (0, 2, 0): -1, (0, 0, 2): Fraction(-3, 4)})
        assert render_form(f) == "x0^2 - x1^2 - 3/4*x2^2"

    def test_zero(self):
        assert render_form(HomogeneousForm.zero(3, 4)) == "0"
        assert parse_form("0", 3, degree=4) == HomogeneousForm.zero(3, 4)

    def test_whitespace_tolerated(self):
        assert parse_form("  6*x0^2+6*x0 * x1\n+ 3*x1^2 + x2^2 ", 3) == parse_form(
            "6*x0^2 + 6*x0*x1 + 3*x1^2 + x2^2", 3
        )

    @given(form_st(3, 3))
    def test_round_trip(self, f):
        assert parse_form(render_form(f), 3, degree=3) == f

    @given(form_st(2, 4))
    def test_round_trip_binary(self, f):
        assert parse_form(render_form(f), 2, degree=4) == f

    def test_content_normalize(self):
        f = parse_form("0", 3, degree=2)
        assert content_normalize(f) == (1, f)
        g = HomogeneousForm(3, 2, {(2, 0, 0): -24, (1, 1, 0): -24, (0, 2, 0): -12, (0, 0, 2): -4})
        factor, primitive = content_normalize(g)
        assert factor == -4
        assert render_form(primitive) == "6*x0^2 + 6*x0*x1 + 3*x1^2 + x2^2"
