"""Exact linear algebra kernel, checked against hand-computed values and brute force."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leibniz_abelian.errors import DimensionMismatch, IrrationalSpectrum, SingularMatrix, UnsupportedArity
from leibniz_abelian.exact_linalg import (
    Matrix,
    Polynomial,
    Q,
    char_poly,
    commutator,
    in_span,
    interpolate,
    is_jordan_form,
    is_nilpotent_matrix,
    jordan_block,
    jordan_form,
    mat,
    nilindependent_matrices,
    nullspace,
    pencil_char_poly,
    poly_gcd,
    rank_nullspace,
    rational_roots,
    solve_affine,
    spectrum,
)

from conftest import matrices, split_matrices


def test_q_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        Q(0.5)
    with pytest.raises(TypeError):
        Q(True)
    assert Q("-3/6") == Fraction(-1, 2)


def test_known_determinant_and_inverse():
    A = mat([[2, 1], [7, 4]])
    assert A.det() == 1
    assert A.inverse() == mat([[4, -1], [-7, 2]])
    with pytest.raises(SingularMatrix):
        mat([[1, 2], [2, 4]]).inverse()


def test_shape_errors():
    with pytest.raises(DimensionMismatch):
        mat([[1, 2]]) + mat([[1], [2]])
    with pytest.raises(DimensionMismatch):
        commutator(mat([[1]]), mat([[1, 0], [0, 1]]))


def test_char_poly_of_companion_matrix():
    # companion of t^3 - 2t^2 - 5t + 6 = (t - 1)(t + 2)(t - 3)
    C = mat([[0, 0, -6], [1, 0, 5], [0, 1, 2]])
    assert char_poly(C) == Polynomial([6, -5, -2, 1])
    assert sorted(r for r, _ in rational_roots(char_poly(C))) == [-2, 1, 3]


def test_char_poly_handles_fractions():
    A = mat([[Fraction(1, 2), 1], [0, Fraction(-1, 3)]])
    assert char_poly(A) == Polynomial([Fraction(-1, 6), Fraction(-1, 6), 1])


def test_irrational_spectrum_is_rejected():
    with pytest.raises(IrrationalSpectrum):
        spectrum(mat([[0, 2], [1, 0]]))


def test_jordan_form_of_a_known_matrix():
    # one 2-block for eigenvalue 2 and a 1-block for 0
    M = mat([[2, 1, 0], [0, 2, 0], [0, 0, 0]])
    P = mat([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    d = jordan_form(P.inverse() @ M @ P)
    assert d.J == M
    assert d.blocks == ((2, 2), (0, 1))


@given(split_matrices())
def test_jordan_reconstruction(data):
    M, blocks = data
    d = jordan_form(M)
    assert d.S @ M @ d.S.inverse() == d.J
    assert is_jordan_form(d.J)
    assert sorted(d.blocks) == sorted(blocks)


@given(matrices(max_n=5))
def test_rank_nullity(M):
    rank, kernel = rank_nullspace(M)
    assert rank + len(kernel) == M.cols
    for v in kernel:
        assert all(x == 0 for x in M @ v)


@given(matrices(max_n=4), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_solve_affine_solutions_are_exact(A, b):
    b = [Fraction(x) for x in b[: A.rows]]
    sol = solve_affine(A, b)
    if sol is None:
        # inconsistent iff b is outside the column space
        assert not in_span(b, [A.col(j) for j in range(A.cols)])
    else:
        x, kernel = sol
        assert list(A @ x) == b
        assert len(kernel) == len(nullspace(A))


@given(matrices(max_n=5))
def test_nilpotency_equivalences(M):
    n = M.rows
    by_power = M.power(n).is_zero()
    by_poly = char_poly(M) == Polynomial.monomial(n)
    assert is_nilpotent_matrix(M) == by_power == by_poly


def test_strictly_triangular_is_nilpotent():
    assert is_nilpotent_matrix(jordan_block(0, 4))
    assert not is_nilpotent_matrix(jordan_block(1, 2))


def test_interpolation_recovers_polynomial():
    p = Polynomial([3, 0, -1, Fraction(1, 2)])
    xs = [0, 1, 2, 5]
    assert interpolate(xs, [p(x) for x in xs]) == p


def test_poly_gcd():
    a = Polynomial([-1, 0, 1])  # t^2 - 1
    b = Polynomial([1, 2, 1])  # (t + 1)^2
    assert poly_gcd(a, b) == Polynomial([1, 1])


@given(matrices(n=3), matrices(n=3))
def test_pencil_char_poly_matches_direct_evaluation(A, B):
    coeffs = pencil_char_poly(A, B)
    for t in (Fraction(-3), Fraction(1, 2), Fraction(7)):
        direct = char_poly(A + B.scale(t))
        assert [c(t) for c in coeffs] == [direct.coeff(k) for k in range(4)]


def test_nilindependence_known_pairs():
    # I and I: every nonzero combination is a nonzero multiple of I
    I = Matrix.identity(2)
    assert nilindependent_matrices([I, I.scale(2)]).independent is False
    assert nilindependent_matrices([Matrix.diag([1, 0]), Matrix.diag([0, 1])]).independent
    res = nilindependent_matrices([mat([[1, 1], [0, 1]]), mat([[2, 3], [0, 2]])])
    assert not res.independent and res.witness == (2, -1)
    with pytest.raises(UnsupportedArity):
        nilindependent_matrices([I, I, I])


def _grid_witness(A, B, box=3):
    for a, b in itertools.product(range(-box, box + 1), repeat=2):
        if (a, b) != (0, 0) and is_nilpotent_matrix(A.scale(a) + B.scale(b)):
            return a, b
    return None


@given(matrices(max_n=3, elements=st.sampled_from([Fraction(x) for x in (-1, 0, 0, 1, 2)])),
       st.data())
def test_nilindependence_vs_grid_brute_force(A, data):
    B = data.draw(matrices(n=A.rows, elements=st.sampled_from([Fraction(x) for x in (-1, 0, 0, 1)])))
    res = nilindependent_matrices([A, B])
    if _grid_witness(A, B) is not None:
        assert not res.independent
    if res.witness is not None:
        a, b = res.witness
        assert is_nilpotent_matrix(A.scale(a) + B.scale(b))
    if res.independent:
        assert _grid_witness(A, B) is None
