"""Transformations act as honest basis changes of the built algebra."""

import random

import pytest
from hypothesis import given, strategies as st

from leibniz_abelian.algebra import change_basis
from leibniz_abelian.classifier.catalog import catalog
from leibniz_abelian.classifier.audit import corrected_instances
from leibniz_abelian.classifier.fingerprint import invariant_fingerprint
from leibniz_abelian.errors import DimensionMismatch, SingularMatrix
from leibniz_abelian.exact_linalg import mat
from leibniz_abelian.extension import ExtensionSpec, build_algebra, validate_spec
from leibniz_abelian.transforms import (
    TransformStep,
    apply_basis_change,
    apply_recombination,
    apply_shift,
    apply_trail,
    random_orbit_sample,
    random_step,
    step_basis_matrix,
)

SPECS = [spec for e in catalog() for _, spec in list(corrected_instances(e))[:2]]


def _l22_example():
    return ExtensionSpec(
        2, 2,
        (mat([[-1, 0], [0, 0]]), mat([[0, 0], [0, -1]])),
        (mat([[1, 0], [0, 0]]), mat([[0, 0], [0, 1]])),
        {},
    )


@given(st.sampled_from(SPECS + [_l22_example()]), st.integers(0, 10**6))
def test_each_step_is_a_change_of_basis(spec, seed):
    step = random_step(random.Random(seed), spec)
    P = step_basis_matrix(spec, step)
    assert build_algebra(step.apply(spec)) == change_basis(build_algebra(spec), P, build_algebra(spec).basis_labels)


def test_shift_formula_for_s1():
    spec = ExtensionSpec.single([[2]], [[3]], [1])
    out = apply_shift(spec, [(1,)])
    # sigma + mu (R + L)
    assert out.sigma[(0, 0)] == (6,)


def test_recombination_scales_sigma_quadratically():
    spec = ExtensionSpec.single([[1, 0], [0, 0]], [[-1, 0], [0, 1]], [0, 1])
    out = apply_recombination(spec, 3)
    assert out.R[0] == spec.R[0].scale(3)
    assert out.sigma[(0, 0)] == (0, 9)
    with pytest.raises(SingularMatrix):
        apply_recombination(spec, 0)


def test_basis_change_shape_checks():
    spec = ExtensionSpec.single([[1]], [[0]], [0])
    with pytest.raises(DimensionMismatch):
        apply_basis_change(spec, [[1, 0], [0, 1]])
    with pytest.raises(DimensionMismatch):
        apply_shift(spec, [(1, 2)])


@given(st.sampled_from(SPECS), st.integers(0, 10**6))
def test_orbits_preserve_validity(spec, seed):
    moved, trail = random_orbit_sample(spec, seed)
    assert len(trail) == 3
    assert apply_trail(spec, trail) == moved
    assert validate_spec(moved).valid


def test_orbit_sample_is_deterministic():
    spec = SPECS[5]
    assert random_orbit_sample(spec, 7) == random_orbit_sample(spec, 7)


@given(st.sampled_from(SPECS), st.integers(0, 10**6))
def test_trail_json_round_trip(spec, seed):
    _, trail = random_orbit_sample(spec, seed)
    back = [TransformStep.from_json(step.to_json()) for step in trail]
    assert back == trail


def test_fingerprint_invariant_on_orbits():
    for seed in range(500):
        spec = SPECS[seed % len(SPECS)]
        moved, _ = random_orbit_sample(spec, seed)
        assert invariant_fingerprint(build_algebra(moved)) == invariant_fingerprint(build_algebra(spec))


def test_fingerprint_separates_dimensions():
    a = build_algebra(ExtensionSpec.single([[0]], [[1]], [0]))
    b = build_algebra(SPECS[-1])
    assert invariant_fingerprint(a) != invariant_fingerprint(b)
    assert invariant_fingerprint(a).lie is False
