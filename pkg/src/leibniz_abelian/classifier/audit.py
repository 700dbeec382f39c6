"""Audit of table rows against the constraint sigma^T R = 0 and the Jacobi oracle."""

from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from ..algebra import check_left_leibniz
from ..exact_linalg import ZERO, Matrix, Q, is_zero_vec, nullspace, solve_affine
from ..extension import ExtensionSpec, build_algebra
from .catalog import (
    FREE_S,
    NONZERO_S,
    ZERO_S,
    RESTRICTIONS,
    TableEntry,
    catalog,
    check_restrictions,
    instantiate,
)

SAMPLE_VALUES = tuple(Q(v) for v in ("-2", "-1", "1/2", "1", "2", "3"))


def matrix_param_samples(entry: TableEntry, pool=SAMPLE_VALUES) -> list[dict]:
    """All assignments of the matrix parameters from ``pool`` that satisfy the restrictions."""
    names = entry.matrix_params
    rmap = entry.restriction_map()
    out = []
    for values in itertools.product(pool, repeat=len(names)):
        params = dict(zip(names, values))
        if all(RESTRICTIONS[rmap[p]][1](v) for p, v in params.items() if p in rmap):
            out.append(params)
    return out


def _printed_span_basis(entry: TableEntry) -> list[int]:
    return [i for i, st in enumerate(entry.sigma_pattern) if st != ZERO_S]


def forced_zero_coordinates(entry: TableEntry, params: dict) -> tuple[int, ...]:
    """Coordinates that vanish on {sigma : printed zeros, sigma^T R = 0}, but are not printed as zero."""
    R = entry.R(params)
    r = entry.r
    idx = _printed_span_basis(entry)
    # sigma = sum_{i in idx} t_i e_i, constraint R^T sigma = 0
    A = Matrix.from_rows([[R[i, k] for i in idx] for k in range(r)]) if idx else None
    if not idx:
        return ()
    basis = nullspace(A)
    return tuple(i for pos, i in enumerate(idx) if all(v[pos] == 0 for v in basis))


def printed_outside_kernel(entry: TableEntry, params: dict) -> tuple[int, ...]:
    """Printed non-zero coordinates i with R^T e_i != 0.

    The printed domain is dense in the coordinate subspace it spans, so it lies
    inside NS(R^T) exactly when this tuple is empty.
    """
    R = entry.R(params)
    return tuple(i for i in _printed_span_basis(entry) if not is_zero_vec(R.row(i)))


def corrected_pattern(entry: TableEntry, forced: tuple[int, ...]) -> tuple:
    pat = [ZERO_S if i in forced else st for i, st in enumerate(entry.sigma_pattern)]
    if entry.not_all_zero:
        rest = [i for i, st in enumerate(pat) if st != ZERO_S]
        if len(rest) == 1:
            pat[rest[0]] = NONZERO_S
    return tuple(pat)


def describe_sigma(entry: TableEntry, pattern, not_all_zero=False) -> str:
    names = entry.sigma_names()
    groups = {ZERO_S: [], FREE_S: [], NONZERO_S: []}
    for i, st in enumerate(pattern):
        groups[st].append(names[i])
    parts = []
    if groups[ZERO_S]:
        parts.append(", ".join(groups[ZERO_S]) + " = 0")
    if groups[FREE_S]:
        parts.append(", ".join(groups[FREE_S]) + " free")
    if groups[NONZERO_S]:
        parts.append(", ".join(groups[NONZERO_S]) + " != 0")
    if not_all_zero:
        parts.append("not all zero")
    return "; ".join(parts)


@dataclass(frozen=True)
class LieLocus:
    empty: bool
    matrix_solution: tuple  # ((param, value), ...) fixed by L + R = 0
    description: str


@dataclass(frozen=True)
class AuditReport:
    entry_id: str
    printed_sigma_domain: str
    derived_sigma_domain: str
    discrepancy: bool
    lie_sublocus: str
    forced_zero: tuple = ()
    outside_kernel: tuple = ()
    corrected_sigma_pattern: tuple = ()
    lie_locus: LieLocus | None = None
    violation_params: dict | None = None
    violation_sigma: tuple | None = None
    violations_xxx: tuple = field(default=())

    def to_json(self) -> dict:
        from .catalog import get_entry

        names = get_entry(self.entry_id).sigma_names()
        return {
            "entry": self.entry_id,
            "printed_sigma_domain": self.printed_sigma_domain,
            "derived_sigma_domain": self.derived_sigma_domain,
            "discrepancy": self.discrepancy,
            "discrepant_coordinates": [names[i] for i in self.forced_zero],
            "lie_sublocus": self.lie_sublocus,
            "violation_example": None
            if self.violation_sigma is None
            else {
                "params": {k: str(v) for k, v in sorted(self.violation_params.items())},
                "sigma": [str(x) for x in self.violation_sigma],
                "xxx_residuals": [[str(x) for x in v.residual] for v in self.violations_xxx],
            },
        }


def lie_locus(entry: TableEntry, corrected) -> LieLocus:
    """Parameters where L + R = 0 and sigma = 0 are admissible; exactly the Lie instances."""
    names = entry.matrix_params
    rows, rhs = [], []
    for i in range(entry.r):
        for j in range(entry.r):
            cells = (entry.R_pattern[i][j], entry.L_pattern[i][j])
            coeff = {p: ZERO for p in names}
            const = ZERO
            for cell in cells:
                const += cell.const
                for p, c in cell.coeffs:
                    coeff[p] += c
            rows.append([coeff[p] for p in names])
            rhs.append(-const)
    if names:
        sol = solve_affine(Matrix.from_rows(rows), rhs)
    else:
        sol = ((), []) if all(x == 0 for x in rhs) else None
    sigma_zero_ok = not entry.not_all_zero and all(st != NONZERO_S for st in corrected)
    if entry.not_all_zero and all(st == ZERO_S for st in corrected):
        sigma_zero_ok = False
    if sol is None:
        return LieLocus(True, (), "empty (L + R != 0 for every parameter value)")
    if not sigma_zero_ok:
        return LieLocus(True, (), "empty (sigma = 0 excluded)")
    particular, kernel = sol
    fixed = []
    for k, p in enumerate(names):
        if all(v[k] == 0 for v in kernel):
            fixed.append((p, particular[k]))
    rmap = entry.restriction_map()
    for p, v in fixed:
        if p in rmap and not RESTRICTIONS[rmap[p]][1](v):
            return LieLocus(True, tuple(fixed), f"empty ({p} = {v} excluded by restriction)")
    conds = [f"{p} = {v}" for p, v in fixed] + ["sigma = 0"]
    return LieLocus(False, tuple(fixed), " and ".join(conds))


def on_lie_locus(spec: ExtensionSpec) -> bool:
    """Instance-level test: L + R = 0 and sigma = 0."""
    return (spec.R[0] + spec.L[0]).is_zero() and is_zero_vec(spec.sigma[(0, 0)])


def _invalid_example(entry: TableEntry, params: dict) -> tuple[dict, tuple]:
    names = entry.sigma_names()
    p = dict(params)
    for i in _printed_span_basis(entry):
        p[names[i]] = Fraction(1)
    sig = tuple(Fraction(1) if i in _printed_span_basis(entry) else ZERO for i in range(entry.r))
    return p, sig


@lru_cache(maxsize=None)
def audit_entry(entry: TableEntry) -> AuditReport:
    samples = matrix_param_samples(entry)
    params = samples[0]
    forced = forced_zero_coordinates(entry, params)
    outside = printed_outside_kernel(entry, params)
    # the forced set does not depend on the sample; confirm on every one
    for other in samples[1:]:
        if forced_zero_coordinates(entry, other) != forced:
            raise AssertionError(f"parameter-dependent sigma domain in ({entry.id})")
    corr = corrected_pattern(entry, forced)
    discrepancy = bool(forced)
    locus = lie_locus(entry, corr)
    vparams = vsig = None
    xxx: tuple = ()
    if discrepancy:
        vparams, vsig = _invalid_example(entry, params)
        spec = ExtensionSpec.single(entry.R(params), entry.L(params), vsig)
        x = entry.r
        xxx = tuple(v for v in check_left_leibniz(build_algebra(spec)) if v.triple == (x, x, x))
    return AuditReport(
        entry_id=entry.id,
        printed_sigma_domain=entry.printed_sigma,
        derived_sigma_domain=describe_sigma(entry, corr),
        discrepancy=discrepancy,
        lie_sublocus=locus.description,
        forced_zero=forced,
        outside_kernel=outside,
        corrected_sigma_pattern=corr,
        lie_locus=locus,
        violation_params=vparams,
        violation_sigma=vsig,
        violations_xxx=xxx,
    )


def audit_all() -> list[AuditReport]:
    return [audit_entry(e) for e in catalog()]


def corrected_instances(entry: TableEntry, pool=SAMPLE_VALUES, per_sample: int = 2) -> Iterator[tuple[dict, ExtensionSpec]]:
    """Deterministic instances inside the restrictions and the audited sigma domain.

    Every admissible matrix-parameter sample is used; sigma values rotate
    through ``pool`` with ``per_sample`` assignments each, plus sigma = 0 when allowed.
    """
    report = audit_entry(entry)
    corr = report.corrected_sigma_pattern
    names = entry.sigma_names()
    open_idx = [i for i, st in enumerate(corr) if st != ZERO_S]
    zero_allowed = all(corr[i] == FREE_S for i in open_idx) and not (entry.not_all_zero and open_idx)
    counter = 0
    seen = set()
    for params in matrix_param_samples(entry, pool):
        choices = []
        if zero_allowed:
            choices.append({names[i]: ZERO for i in open_idx})
        for _ in range(per_sample if open_idx else 0):
            assign = {}
            for i in open_idx:
                assign[names[i]] = pool[counter % len(pool)]
                counter += 1
            choices.append(assign)
        if not open_idx:
            choices = [{}]
        for assign in choices:
            forced = {n: ZERO for n in entry.sigma_params}
            full = {**params, **forced, **assign}
            if entry.sigma_order_convention:
                i, j = entry.sigma_order_convention
                if full[names[i]] < full[names[j]]:
                    full[names[i]], full[names[j]] = full[names[j]], full[names[i]]
            key = tuple(sorted(full.items()))
            if key in seen or check_restrictions(entry, full, corr):
                continue
            seen.add(key)
            yield full, instantiate(entry, full, sigma_pattern=corr)


def flagged_ids() -> set[str]:
    return {rep.entry_id for rep in audit_all() if rep.discrepancy}


def outside_kernel_ids() -> set[str]:
    return {rep.entry_id for rep in audit_all() if rep.outside_kernel}
