"""The stored table and its audit against the sigma constraint."""

from fractions import Fraction

import pytest

from leibniz_abelian.algebra import check_left_leibniz, is_lie
from leibniz_abelian.classifier.audit import (
    audit_entry,
    corrected_instances,
    flagged_ids,
    forced_zero_coordinates,
    lie_locus,
    matrix_param_samples,
    on_lie_locus,
    outside_kernel_ids,
)
from leibniz_abelian.classifier.catalog import (
    NONZERO_S,
    ZERO_S,
    catalog,
    check_restrictions,
    get_entry,
    instantiate,
)
from leibniz_abelian.errors import MissingParameter, RestrictionViolated, UnknownCase
from leibniz_abelian.exact_linalg import mat
from leibniz_abelian.extension import build_algebra, validate_spec


def test_catalog_has_28_rows_in_table_order():
    ids = [e.id for e in catalog()]
    assert len(ids) == 28
    assert ids[:6] == ["1", "2.1", "2.2", "2.3", "2.4", "2.5"]
    assert ids[-1] == "3.22"
    assert sum(e.r == 3 for e in catalog()) == 22


def test_row_3_4_instance():
    spec = instantiate(get_entry("3.4"), {"sigma3": 2})
    assert spec.R[0] == mat([[0, 0, 0]] * 3)
    assert spec.L[0] == mat([[1, 1, 0], [0, 1, 0], [0, 0, 0]])
    assert spec.sigma[(0, 0)] == (0, 0, 2)


def test_minus_r_rows():
    e = get_entry("3.18")
    R = e.R({"a": 2})
    assert e.L({"a": 2}) == -R


def test_instantiate_errors():
    with pytest.raises(MissingParameter):
        instantiate(get_entry("2.2"), {})
    with pytest.raises(RestrictionViolated):
        instantiate(get_entry("2.2"), {"a": 0})
    with pytest.raises(RestrictionViolated):
        instantiate(get_entry("3.7"), {"a": 1})
    with pytest.raises(RestrictionViolated):
        instantiate(get_entry("2.5"), {"sigma1": 0, "sigma2": 0})
    with pytest.raises(UnknownCase):
        get_entry("4.1")
    assert get_entry("(3.16)").id == "3.16"


def test_restriction_report_lists_every_problem():
    e = get_entry("3.3")
    assert check_restrictions(e, {"a": 0, "b": 0}) == ["a != 0", "b != 0"]


def test_flagged_rows_are_exactly_those_outside_the_kernel():
    assert flagged_ids() == outside_kernel_ids()
    assert {"2.4", "2.5", "3.9", "3.12", "3.13", "3.16", "3.22"} <= flagged_ids()
    assert not ({"1", "2.1", "2.2", "3.1", "3.8"} & flagged_ids())


def test_row_2_4_is_forced_to_sigma_zero():
    e = get_entry("2.4")
    assert forced_zero_coordinates(e, {"a": Fraction(2)}) == (0,)
    rep = audit_entry(e)
    assert rep.discrepancy
    assert rep.corrected_sigma_pattern == (ZERO_S, ZERO_S)


def test_row_2_5_keeps_sigma2_nonzero():
    rep = audit_entry(get_entry("2.5"))
    assert rep.corrected_sigma_pattern == (ZERO_S, NONZERO_S)


def test_row_3_16_corrected_pattern():
    rep = audit_entry(get_entry("3.16"))
    assert rep.corrected_sigma_pattern == (ZERO_S, NONZERO_S, NONZERO_S)


def test_flagged_rows_have_a_concrete_xxx_violation():
    for e in catalog():
        rep = audit_entry(e)
        if not rep.discrepancy:
            assert rep.violations_xxx == ()
            continue
        assert rep.violations_xxx, e.id
        spec = instantiate(e, rep.violation_params)
        viol = check_left_leibniz(build_algebra(spec))
        x = e.r
        assert any(v.triple == (x, x, x) for v in viol)


def test_unflagged_printed_domain_is_sound():
    for e in catalog():
        if audit_entry(e).discrepancy:
            continue
        params = dict(matrix_param_samples(e)[0])
        for name in e.sigma_params:
            params[name] = Fraction(1)
        spec = instantiate(e, params)
        assert check_left_leibniz(build_algebra(spec)) == [], e.id


def test_lie_loci_are_empty():
    for e in catalog():
        assert lie_locus(e, audit_entry(e).corrected_sigma_pattern).empty, e.id


def test_corrected_instances_are_valid_and_non_lie():
    count = 0
    for e in catalog():
        for params, spec in corrected_instances(e):
            count += 1
            assert validate_spec(spec).valid, (e.id, params)
            assert is_lie(build_algebra(spec)) == on_lie_locus(spec)
            assert not on_lie_locus(spec)
    assert count >= 150


def test_audit_json_names_discrepant_coordinates():
    data = audit_entry(get_entry("2.4")).to_json()
    assert data["discrepant_coordinates"] == ["sigma1"]
    assert data["violation_example"]["xxx_residuals"]
    assert data["derived_sigma_domain"] == "sigma1, sigma2 = 0"
