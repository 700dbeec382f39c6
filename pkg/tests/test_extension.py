"""Extension specs: the linear constraints agree with the full Leibniz identity."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leibniz_abelian.algebra import check_left_leibniz, is_lie
from leibniz_abelian.errors import DimensionMismatch, NotJordanForm
from leibniz_abelian.exact_linalg import Matrix, mat
from leibniz_abelian.extension import (
    ExtensionSpec,
    bounds_ok,
    build_algebra,
    check_structure_constraints,
    lemma_checks,
    solve_single_constraints,
    spec_from_algebra,
    validate_spec,
)

from conftest import matrices, split_matrices

ENTRIES = st.integers(-1, 1).map(Fraction)


@st.composite
def raw_specs(draw, max_r=3, max_s=2):
    r = draw(st.integers(1, max_r))
    s = draw(st.integers(1, max_s))
    L = tuple(draw(matrices(n=r, elements=ENTRIES)) for _ in range(s))
    R = tuple(draw(matrices(n=r, elements=ENTRIES)) for _ in range(s))
    sigma = {(a, b): tuple(draw(ENTRIES) for _ in range(r)) for a in range(s) for b in range(s)}
    return ExtensionSpec(r, s, L, R, sigma)


def test_single_constructor_and_shapes():
    spec = ExtensionSpec.single([[1]], [[-1]], [0])
    assert (spec.r, spec.s, spec.n) == (1, 1, 2)
    with pytest.raises(DimensionMismatch):
        ExtensionSpec(2, 1, (mat([[1]]),), (mat([[1]]),), {})
    with pytest.raises(DimensionMismatch):
        ExtensionSpec(1, 1, (mat([[1]]),), (mat([[1]]),), {(0, 0): (1, 2)})


def test_build_algebra_products():
    spec = ExtensionSpec.single([[2]], [[3]], [5])
    alg = build_algebra(spec)
    assert alg.basis_labels == ("n", "x")
    assert alg.c[1][0] == (3, 0)  # [x, n] = L n
    assert alg.c[0][1] == (2, 0)  # [n, x] = R n
    assert alg.c[1][1] == (5, 0)  # [x, x] = sigma
    assert spec_from_algebra(alg, 1) == spec


@given(raw_specs())
def test_linear_constraints_match_jacobi_oracle(spec):
    report = check_structure_constraints(spec)
    assert report.identity_ok == (check_left_leibniz(build_algebra(spec)) == [])


def test_bounds():
    assert bounds_ok(1, 1) and bounds_ok(2, 2) and bounds_ok(3, 1)
    assert not bounds_ok(1, 2)
    assert not bounds_ok(3, 3)


def test_validate_known_valid_spec():
    # [x, n] = n, [n, x] = 0, [x, x] = 0: valid non-Lie L(1, 1)
    spec = ExtensionSpec.single([[0]], [[1]], [0])
    res = validate_spec(spec)
    assert res.valid and res.nilradical.is_nilradical
    assert not is_lie(build_algebra(spec))


def test_validate_rejects_nilpotent_x():
    spec = ExtensionSpec.single([[0, 1], [0, 0]], [[0, -1], [0, 0]], [0, 0])
    res = validate_spec(spec)
    assert not res.valid
    assert any("nilindependent" in reason for reason in res.reasons)


def test_validate_rejects_identity_failure():
    spec = ExtensionSpec.single([[1]], [[0]], [0])
    res = validate_spec(spec)
    assert not res.valid
    assert res.report.eq5c


def test_lemma_checks_require_jordan_form():
    spec = ExtensionSpec.single([[1, 1], [1, 1]], [[-1, -1], [-1, -1]], [0, 0])
    with pytest.raises(NotJordanForm):
        lemma_checks(spec)
    assert lemma_checks(spec, part2=False).lemma41_part1


def test_lemma41_part2_on_jordan_r():
    spec = ExtensionSpec.single([[1, 0], [0, 0]], [[-1, 0], [0, 1]], [1, 1])
    rep = lemma_checks(spec)
    assert rep.lemma41_part2 == ((0, 0),)
    assert rep.lemma41_part1 is False


@given(split_matrices(max_n=3))
def test_nonsingular_r_forces_lie(data):
    M, blocks = data
    if any(lam == 0 for lam, _ in blocks):
        M = M + Matrix.identity(M.rows).scale(5)
    sol = solve_single_constraints(M)
    assert sol.L_unique and sol.L_particular == -M
    assert sol.sigma_basis == ()
    spec = ExtensionSpec.single(M, sol.L_particular, [0] * M.rows)
    assert is_lie(build_algebra(spec))


@given(raw_specs(max_r=3, max_s=1))
def test_constraint_solutions_are_solutions(spec):
    sol = solve_single_constraints(spec.R[0])
    rng = random.Random(0)
    L = sol.L_particular
    for B in sol.L_basis:
        L = L + B.scale(rng.randint(-3, 3))
    sigma = [0] * spec.r
    for v in sol.sigma_basis:
        c = rng.randint(-3, 3)
        sigma = [a + c * b for a, b in zip(sigma, v)]
    candidate = ExtensionSpec.single(spec.R[0], L, sigma)
    assert check_left_leibniz(build_algebra(candidate)) == []
