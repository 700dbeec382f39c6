"""Canonical forms for L(r, 1), r <= 3, and recovery of table rows from orbits."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leibniz_abelian.classifier.audit import corrected_instances
from leibniz_abelian.classifier.canonical import (
    canonical_match,
    canonicalize_r1,
    centralizer_basis,
    entry_representatives,
    match_catalog,
    orbit_test,
)
from leibniz_abelian.classifier.catalog import catalog, get_entry, instantiate
from leibniz_abelian.errors import InvalidSpec, LieTypeAlgebra
from leibniz_abelian.exact_linalg import commutator, mat
from leibniz_abelian.extension import ExtensionSpec
from leibniz_abelian.transforms import apply_trail, random_orbit_sample

INSTANCES = [(e.id, spec) for e in catalog() for _, spec in list(corrected_instances(e))[:3]]


def test_row_1_sigma_is_removed_by_a_shift():
    # R + L = 3 is invertible, so sigma shifts to 0; L rescales to 1
    entry_id, params, trail = canonicalize_r1(ExtensionSpec.single([[0]], [[3]], [4]))
    assert (entry_id, params) == ("1", {"sigma": 0})
    assert trail


def test_row_2_1_sigma_normalizes_to_one():
    spec = ExtensionSpec.single([[0, 0], [0, 0]], [[5, 0], [0, 0]], [3, 7])
    entry_id, params, _ = canonicalize_r1(spec)
    assert (entry_id, params) == ("2.1", {"sigma2": 1})


def test_overlapping_rows_prefer_the_dedicated_row():
    assert canonicalize_r1(instantiate(get_entry("3.3"), {"a": 1, "b": 1}))[0] == "3.8"
    entry_id, params, _ = canonicalize_r1(instantiate(get_entry("3.6"), {"a": 2}))
    assert (entry_id, params) == ("3.7", {"a": Fraction(1, 2)})


def test_redundant_parameters_are_normalized():
    # in rows 3.9 and 3.10 a shift of n3 clears the free corner entry
    spec = instantiate(get_entry("3.9"), {"a": 2, "sigma1": 0, "sigma2": 1},
                       sigma_pattern=("zero", "free", "zero"))
    entry_id, params, _ = canonicalize_r1(spec)
    assert entry_id == "3.9" and params["a"] == 0


def test_rejections():
    with pytest.raises(LieTypeAlgebra):
        canonicalize_r1(ExtensionSpec.single([[1]], [[-1]], [0]))
    with pytest.raises(InvalidSpec):
        canonicalize_r1(ExtensionSpec.single([[1]], [[0]], [0]))
    with pytest.raises(InvalidSpec):
        canonicalize_r1(ExtensionSpec(1, 2, (mat([[1]]),) * 2, (mat([[0]]),) * 2, {}))


@given(st.sampled_from(INSTANCES))
def test_trail_reproduces_the_table_instance(item):
    _, spec = item
    m = match_catalog(spec)
    assert apply_trail(spec, m.trail) == m.canonical
    assert m.canonical == instantiate(get_entry(m.entry_id), m.params,
                                      sigma_pattern=m.audit.corrected_sigma_pattern)


@given(st.sampled_from(INSTANCES), st.integers(0, 10**6))
def test_canonical_form_is_orbit_invariant(item, seed):
    _, spec = item
    moved, _ = random_orbit_sample(spec, seed)
    assert canonicalize_r1(moved)[:2] == canonicalize_r1(spec)[:2]


def test_centralizer_basis_commutes():
    R = mat([[1, 0, 0], [0, 0, 1], [0, 0, 0]])
    L = mat([[-1, 0, 0], [0, 0, 2], [0, 0, 0]])
    basis = centralizer_basis([R, L])
    assert len(basis) == 3
    for C in basis:
        assert commutator(C, R).is_zero() and commutator(C, L).is_zero()


def test_representatives_are_canonical():
    for params, spec in entry_representatives(get_entry("3.13")):
        m = canonical_match(spec)
        assert (m.entry_id, m.params) == ("3.13", params)
        assert m.trail == () or apply_trail(spec, m.trail) == spec


def test_row_3_11_has_no_representative_of_its_own():
    assert entry_representatives(get_entry("3.11")) == []
    res = orbit_test("3.11", 5)
    assert not res.ok and res.trials == 0


@pytest.mark.parametrize("entry_id", ["1", "2.4", "3.16", "3.21"])
def test_short_orbit_round_trips(entry_id):
    res = orbit_test(entry_id, 8)
    assert res.ok, res.failures
