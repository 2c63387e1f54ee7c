import random
from fractions import Fraction

import pytest

from services.exact_linalg import (
    ConstructionError, DegreeVector, DimensionMismatchError, ExactMatrix,
    char_poly, identity, mat_add, mat_mul, mat_pow, mat_scale, mat_sub,
    mat_vec, mat_vec_rational, upper_tri_inverse, zero,
)
from services.production import build_R, build_S, build_convex_C


def test_entries_are_kept_in_lowest_terms():
    a = ExactMatrix([[Fraction(2, 4), 1], [0, '6/8']])
    assert a.denominator == 4
    assert a[0, 0] == Fraction(1, 2)
    assert a[1, 1] == Fraction(3, 4)
    assert not a.is_integer()
    assert ExactMatrix([[2, 4], [6, 8]]).is_integer()


def test_rejects_non_square_and_bad_entries():
    with pytest.raises(DimensionMismatchError):
        ExactMatrix([[1, 2]])
    with pytest.raises(DimensionMismatchError):
        ExactMatrix([])
    with pytest.raises(TypeError):
        ExactMatrix([[0.5]])


def test_random_rationals_survive_normalisation():
    rng = random.Random(7)
    for _ in range(50):
        p, q = rng.randint(-10**6, 10**6), rng.randint(1, 10**6)
        a = ExactMatrix([[Fraction(p, q), 1], [0, 1]])
        assert a[0, 0] == Fraction(p, q)
        assert a[0, 0].denominator > 0


def test_convex_matrix_is_R_plus_S():
    c = mat_add(build_R(6), build_S(6))
    assert c == build_convex_C(6)
    assert [int(v) for v in c.column(0)] == [1, 1, 0, 0, 0, 0]
    assert [int(v) for v in c.column(5)] == [1, 2, 2, 2, 2, 2]


def test_add_zero_and_doubling():
    s = build_S(6)
    assert mat_add(s, zero(6)) == s
    doubled = mat_add(s, s)
    assert doubled == mat_scale(s, 2)
    assert all(doubled[i, i - 1] == 2 for i in range(1, 6))
    assert mat_sub(doubled, s) == s


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        mat_add(identity(2), identity(3))
    with pytest.raises(DimensionMismatchError):
        mat_mul(identity(2), identity(3))
    with pytest.raises(DimensionMismatchError):
        mat_vec(identity(3), DegreeVector((1, 0)))


def test_shift_powers_and_nilpotence():
    s = build_S(6)
    s2 = mat_mul(s, s)
    assert all(s2[i, j] == (1 if i == j + 2 else 0) for i in range(6) for j in range(6))
    assert mat_pow(s, 6) == zero(6)
    assert mat_pow(s, 5) != zero(6)
    assert mat_pow(build_R(6), 0) == identity(6)


def test_power_additivity_on_random_matrices():
    rng = random.Random(11)
    for _ in range(5):
        a = ExactMatrix([[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(3)] for _ in range(3)])
        e1, e2 = rng.randint(0, 6), rng.randint(0, 6)
        assert mat_pow(a, e1 + e2) == mat_mul(mat_pow(a, e1), mat_pow(a, e2))


def test_triangular_inverse():
    r = build_R(6)
    r_inv = upper_tri_inverse(r)
    assert mat_mul(r, r_inv) == identity(6)
    assert mat_mul(r_inv, r) == identity(6)
    assert r_inv[0, 1] == Fraction(-1, 2)
    assert upper_tri_inverse(identity(4)) == identity(4)


def test_triangular_inverse_rejects_bad_input():
    with pytest.raises(ValueError):
        upper_tri_inverse(build_convex_C(4))
    with pytest.raises(ValueError):
        upper_tri_inverse(ExactMatrix([[1, 1], [0, 0]]))


def test_mat_vec_on_degree_vectors():
    c = build_convex_C(6)
    e1 = DegreeVector.unit(6)
    assert mat_vec(c, e1).entries == (1, 1, 0, 0, 0, 0)
    assert mat_vec(mat_pow(c, 3), e1).entries == (6, 10, 5, 1, 0, 0)
    assert mat_vec(zero(6), e1).entries == (0,) * 6


def test_printed_p6_applied_to_start_vector(golden):
    assert mat_vec(golden('p6'), DegreeVector.unit(6)).entries == (32, 48, 20, 4, 0, 0)


def test_mat_vec_signals_fractional_results(golden):
    with pytest.raises(ConstructionError):
        mat_vec(golden('p6'), DegreeVector((0, 0, 0, 0, 0, 1)))
    with pytest.raises(ConstructionError):
        mat_vec(mat_scale(identity(2), -1), DegreeVector((1, 0)))


def test_mat_vec_rational():
    r = build_R(3)
    assert mat_vec_rational(r, [Fraction(1, 2), 1, Fraction(1, 3)]) == (
        Fraction(11, 6), Fraction(8, 3), Fraction(2, 3))


def test_degree_vector_contract():
    with pytest.raises(ConstructionError):
        DegreeVector((1, -1))
    with pytest.raises(ConstructionError):
        DegreeVector((1, Fraction(1, 2)))
    v = DegreeVector((3, 2))
    assert v.total == 5
    assert v.padded(4).entries == (3, 2, 0, 0)
    with pytest.raises(DimensionMismatchError):
        v.padded(1)


def test_char_poly_of_small_matrices():
    # R_2 = [[1, 1], [0, 2]]: (x - 1)(x - 2)
    assert char_poly(build_R(2)) == [1, -3, 2]
    assert char_poly(identity(3)) == [1, -3, 3, -1]


def test_json_round_trip_keeps_fractions(golden):
    p6 = golden('p6')
    data = p6.to_json()
    assert data['entries'][0][3] == '155/4'
    assert data['entries'][1][0] == '48/1'
    assert ExactMatrix.from_json(data) == p6
