"""Structure-constant algebras: identity checks, series, annihilators, nilradicals."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leibniz_abelian.algebra import (
    LeibnizAlgebra,
    Subspace,
    antisymmetry_failures,
    bracket,
    centroid_basis,
    change_basis,
    check_left_leibniz,
    ideal_test,
    is_decomposable,
    is_lie,
    is_nilpotent_element,
    left_annihilator,
    nilindependent_elements,
    nilradical_check,
    series,
    solvability_predicates,
)
from leibniz_abelian.errors import DimensionMismatch, NotSolvable, UnsupportedArity, UnsupportedCodimension

from conftest import invertible_matrices


def heisenberg():
    return LeibnizAlgebra.from_brackets(
        ["a", "b", "c"], {("a", "b"): {"c": 1}, ("b", "a"): {"c": -1}}
    )


def r2():
    # [x, n] = n, [n, x] = -n
    return LeibnizAlgebra.from_brackets(["n", "x"], {("x", "n"): {"n": 1}, ("n", "x"): {"n": -1}})


def r2_plus_r2():
    return LeibnizAlgebra.from_brackets(
        ["n1", "n2", "x1", "x2"],
        {
            ("x1", "n1"): {"n1": 1}, ("n1", "x1"): {"n1": -1},
            ("x2", "n2"): {"n2": 1}, ("n2", "x2"): {"n2": -1},
        },
    )


def non_lie_l11():
    # [x, n] = n, [x, x] = n: left Leibniz, [n, x] = 0
    return LeibnizAlgebra.from_brackets(["n", "x"], {("x", "n"): {"n": 1}, ("x", "x"): {"n": 1}})


def sl2():
    return LeibnizAlgebra.from_brackets(
        ["e", "f", "h"],
        {
            ("e", "f"): {"h": 1}, ("f", "e"): {"h": -1},
            ("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
            ("h", "f"): {"f": -2}, ("f", "h"): {"f": 2},
        },
    )


def test_shape_validation():
    with pytest.raises(DimensionMismatch):
        LeibnizAlgebra(2, [[[0, 0]]])
    with pytest.raises(DimensionMismatch):
        bracket(r2(), (1, 0, 0), (1, 0))


def test_known_lie_algebras_pass():
    for alg in (heisenberg(), r2(), sl2(), r2_plus_r2()):
        assert check_left_leibniz(alg) == []
        assert is_lie(alg)


def test_left_leibniz_non_lie_example():
    alg = non_lie_l11()
    assert check_left_leibniz(alg) == []
    assert not is_lie(alg)
    assert (1, 1) in antisymmetry_failures(alg)


def test_right_leibniz_algebra_fails_left_identity():
    # the opposite algebra of the example: [n, x] = n, [x, x] = n
    alg = LeibnizAlgebra.from_brackets(["n", "x"], {("n", "x"): {"n": 1}, ("x", "x"): {"n": 1}})
    viol = check_left_leibniz(alg)
    assert viol
    assert all(any(v.residual) for v in viol)


def test_series_of_known_algebras():
    h = heisenberg()
    assert series(h, "derived").dims == (1, 0)
    assert series(h, "lower").dims == (1, 0)
    rep = series(r2(), "lower_central")
    assert rep.dims == (1,) and rep.stabilized and not rep.terminates_at_zero
    assert solvability_predicates(r2()) == (True, False)
    assert solvability_predicates(sl2()) == (False, False)
    with pytest.raises(ValueError):
        series(h, "upper")


def test_left_annihilator():
    # Ann_l is spanned by the squares in a Leibniz algebra with [x, x] = n
    ann = left_annihilator(non_lie_l11())
    assert ann == Subspace.span(2, [(1, 0)])
    assert left_annihilator(sl2()).dim == 0


def test_nilpotent_elements_and_nilindependence():
    alg = r2_plus_r2()
    assert is_nilpotent_element(alg, (1, 0, 0, 0))
    assert not is_nilpotent_element(alg, (0, 0, 1, 0))
    assert nilindependent_elements(alg, [(0, 0, 1, 0), (0, 0, 0, 1)])
    # x1 and 2*x1 have a nilpotent combination
    assert not nilindependent_elements(alg, [(0, 0, 1, 0), (0, 0, 2, 0)])
    with pytest.raises(UnsupportedArity):
        nilindependent_elements(alg, [(0, 0, 1, 0)] * 3)


def test_nilradical_check():
    alg = r2_plus_r2()
    N = Subspace.span(4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    assert nilradical_check(alg, N).is_nilradical
    assert ideal_test(alg, N)
    # adding x1 breaks nilpotency
    assert not nilradical_check(alg, Subspace.span(4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)]))
    with pytest.raises(UnsupportedCodimension):
        nilradical_check(alg, Subspace.zero(4))
    assert not nilradical_check(r2(), Subspace.whole(2))
    with pytest.raises(NotSolvable):
        nilradical_check(sl2(), Subspace.span(3, [(1, 0, 0), (0, 1, 0)]))


def test_nilradical_rejects_non_maximal_candidate():
    # the Heisenberg algebra is nilpotent, so no proper ideal is its nilradical
    h = heisenberg()
    res = nilradical_check(h, Subspace.span(3, [(0, 1, 0), (0, 0, 1)]))
    assert not res.is_nilradical


@given(invertible_matrices(4))
def test_change_basis_preserves_invariants(P):
    alg = r2_plus_r2()
    new = change_basis(alg, P)
    assert check_left_leibniz(new) == []
    assert series(new, "derived").dims == series(alg, "derived").dims
    assert left_annihilator(new).dim == left_annihilator(alg).dim


def test_centroid_and_decomposability():
    assert is_decomposable(r2_plus_r2())
    assert not is_decomposable(r2())
    assert not is_decomposable(heisenberg())
    # an abelian algebra of dimension 2 is a sum of two lines
    assert is_decomposable(LeibnizAlgebra.abelian(2))
    # the centroid of sl2 consists of scalars
    assert len(centroid_basis(sl2())) == 1


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_centroid_elements_commute_with_brackets(a, b):
    alg = r2_plus_r2()
    for T in centroid_basis(alg):
        x = (Fraction(a), 1, 0, 2)
        y = (0, Fraction(b), 1, 1)
        assert T @ bracket(alg, x, y) == bracket(alg, T @ x, y) == bracket(alg, x, T @ y)
