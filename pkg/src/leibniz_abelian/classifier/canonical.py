"""Canonical forms of valid L(r, 1), r <= 3, and matching against the table.

Procedure:

1. Jordan-form R (or L when R = 0), nonzero blocks first, zero blocks last.
2. Rescale x so the leading eigenvalue becomes 1, then restore unit superdiagonals.
3. Secondary normalization: Jordan-form L on the zero part of R when that part
   is a zero matrix; for nilpotent R = J2(0) + 0 clear L_13 and L_32.
4. Reduce sigma with the centralizer of (R, L) and shifts to a 0/1 vector.
5. Match the result against every table pattern; among all admissible
   choices keep the smallest (priority, parameters, sigma) key.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import is_lie
from ..errors import InvalidSpec, LieTypeAlgebra, NoMatch
from ..exact_linalg import (
    ONE,
    ZERO,
    JordanChain,
    Matrix,
    assemble_jordan,
    is_zero_vec,
    jordan_chains,
    nullspace,
    solve_affine,
)
from ..extension import ExtensionSpec, build_algebra, validate_spec
from ..transforms import TransformStep, apply_trail, random_orbit_sample
from .audit import AuditReport, audit_entry, corrected_instances, on_lie_locus
from .catalog import (
    ENTRY_ORDER,
    NONZERO_S,
    ZERO_S,
    TableEntry,
    catalog,
    get_entry,
    check_restrictions,
    instantiate,
)


def _basis_step(S: Matrix) -> list[TransformStep]:
    return [] if S == Matrix.identity(S.rows) else [TransformStep("basis_change", S)]


def _chain_orders(chains: list[JordanChain]) -> list[list[JordanChain]]:
    """Every order of nonzero-eigenvalue chains, followed by zero chains (largest first)."""
    nonzero = [c for c in chains if c.eigenvalue != 0]
    zero = sorted((c for c in chains if c.eigenvalue == 0), key=lambda c: -c.size)
    seen, out = set(), []
    for perm in itertools.permutations(nonzero):
        key = tuple((c.eigenvalue, c.size) for c in perm)
        if key in seen:
            continue
        seen.add(key)
        out.append(list(perm) + zero)
    return out or [zero]


def _unit_superdiag(blocks, g) -> Matrix:
    """Diagonal D with D (gJ) D^-1 = g-scaled J carrying unit superdiagonals."""
    d = []
    for _, size in blocks:
        d.extend(g**k for k in range(size))
    return Matrix.diag(d)


def _jordan_basis(P: Matrix, order: list[JordanChain]):
    dec = assemble_jordan(order)
    if dec.J == P:
        return dec, Matrix.identity(P.rows)
    return dec, dec.S


def _leading_scale(spec: ExtensionSpec, order, use_R: bool):
    """Trail that puts the driving matrix in Jordan form with leading eigenvalue 1."""
    P = spec.R[0] if use_R else spec.L[0]
    dec, S = _jordan_basis(P, order)
    lam = order[0].eigenvalue
    g = ONE / lam
    D = _unit_superdiag(dec.blocks, g)
    trail = _basis_step(D @ S)
    if g != 1:
        trail.append(TransformStep("recombination", Matrix.diag([g])))
    return trail


def _embed(S_block: Matrix, start: int, r: int) -> Matrix:
    rows = Matrix.identity(r).to_rows()
    for i in range(S_block.rows):
        for j in range(S_block.cols):
            rows[start + i][start + j] = S_block[i, j]
    return Matrix.from_rows(rows)


def _secondary_orders(spec: ExtensionSpec) -> list[list[TransformStep]]:
    """Alternative secondary normalizations (each a trail) for a spec with R in Jordan form."""
    R, L = spec.R[0], spec.L[0]
    r = spec.r
    zero_start = sum(1 for i in range(r) if R[i, i] != 0)
    if any(R[i, j] for i in range(zero_start, r) for j in range(r)):
        return [[]]
    m = r - zero_start
    if R.is_zero() or m < 2:
        return [[]]
    M = Matrix.from_rows([[L[zero_start + i, zero_start + j] for j in range(m)] for i in range(m)])
    out = []
    for order in _chain_orders(jordan_chains(M)):
        _, S = _jordan_basis(M, order)
        out.append(_basis_step(_embed(S, zero_start, r)))
    return out


def _nilpotent_R_trail(spec: ExtensionSpec) -> list[TransformStep]:
    """R nilpotent: valid only as J2(0) + 0; normalize L_33 = 1 and clear L_13, L_32."""
    R = spec.R[0]
    chains = jordan_chains(R)
    order = sorted(chains, key=lambda c: -c.size)
    if spec.r != 3 or [c.size for c in order] != [2, 1]:
        raise NoMatch("nilpotent R outside the J2(0) + 0 case")
    dec, S = _jordan_basis(R, order)
    trail = _basis_step(S)
    cur = apply_trail(spec, trail)
    w = cur.L[0][2, 2]
    if w == 0:
        raise NoMatch("L_33 vanishes; the extension would be nilpotent")
    g = ONE / w
    if g != 1:
        # rescaling multiplies R by g; conjugating by diag(1, g, 1) first keeps R_12 = 1
        trail += [TransformStep("basis_change", Matrix.diag([ONE, g, ONE])),
                  TransformStep("recombination", Matrix.diag([g]))]
        cur = apply_trail(spec, trail)
    L = cur.L[0]
    y, z = L[0, 2], L[2, 1]
    if y or z:
        trail.append(TransformStep("basis_change", Matrix.from_rows([[1, 0, -y], [0, 1, 0], [0, z, 1]])))
    return trail


def centralizer_basis(mats: list[Matrix]) -> list[Matrix]:
    """Basis of {S : S M = M S for all M}."""
    r = mats[0].rows
    rows = []
    for M in mats:
        for i in range(r):
            for j in range(r):
                # (S M - M S)_ij as a linear form in the entries of S
                row = [ZERO] * (r * r)
                for k in range(r):
                    row[i * r + k] += M[k, j]
                    row[k * r + j] -= M[i, k]
                rows.append(row)
    basis = nullspace(Matrix.from_rows(rows))
    return [Matrix(r, r, tuple(v)) for v in basis]


def _sigma_orbit_step(spec: ExtensionSpec, tau, rng: random.Random):
    """Trail taking sigma to ``tau`` without moving (R, L), or None when tau is not in the orbit."""
    R, L = spec.R[0], spec.L[0]
    r = spec.r
    sigma = spec.sigma[(0, 0)]
    tau = tuple(Fraction(x) for x in tau)
    W = (R + L).T  # shifts add W mu
    shift_sol = solve_affine(W, tuple(t - s for t, s in zip(tau, sigma)))
    if shift_sol is not None:
        mu = shift_sol[0]
        return [] if is_zero_vec(mu) else [TransformStep("shift", (mu,))]
    cent = centralizer_basis([R, L])
    # sigma = S^T tau - W nu for some invertible S in the centralizer
    cols = [C.T @ tau for C in cent] + [tuple(-x for x in W.col(j)) for j in range(r)]
    A = Matrix.from_columns(cols)
    sol = solve_affine(A, sigma)
    if sol is None:
        return None
    part, kern = sol
    k = len(cent)
    candidates = [part]
    for _ in range(60):
        coeffs = [rng.randint(-3, 3) for _ in kern]
        v = list(part)
        for c, kv in zip(coeffs, kern):
            v = [a + c * b for a, b in zip(v, kv)]
        candidates.append(tuple(v))
    for v in candidates:
        S = Matrix.zeros(r)
        for c, C in zip(v[:k], cent):
            if c:
                S = S + C.scale(c)
        if S.det() == 0:
            continue
        trail = [TransformStep("basis_change", S)]
        moved = apply_trail(spec, trail)
        mu = solve_affine(W, tuple(t - s for t, s in zip(tau, moved.sigma[(0, 0)])))
        if mu is None:  # cannot happen: S^-T sigma - tau lies in im W
            continue
        if not is_zero_vec(mu[0]):
            trail.append(TransformStep("shift", (mu[0],)))
        return trail
    return None


def _match_matrices(entry: TableEntry, R: Matrix, L: Matrix) -> dict | None:
    names = entry.matrix_params
    rows, rhs = [], []
    for pat, M in ((entry.R_pattern, R), (entry.L_pattern, L)):
        for i in range(entry.r):
            for j in range(entry.r):
                cell = pat[i][j]
                coeff = dict(cell.coeffs)
                if not names:
                    if cell.const != M[i, j]:
                        return None
                    continue
                rows.append([coeff.get(p, ZERO) for p in names])
                rhs.append(M[i, j] - cell.const)
    if not names:
        return {}
    sol = solve_affine(Matrix.from_rows(rows), rhs)
    if sol is None or sol[1]:
        return None
    return dict(zip(names, sol[0]))


def _param_key(entry: TableEntry, params: dict) -> tuple:
    return tuple((-abs(params[p]), -params[p]) for p in entry.matrix_params)


def _sigma_candidates(pattern) -> list[tuple]:
    choices = []
    for st in pattern:
        choices.append((ZERO,) if st == ZERO_S else (ONE,) if st == NONZERO_S else (ZERO, ONE))
    return [tuple(c) for c in itertools.product(*choices)]


@dataclass(frozen=True)
class CatalogMatch:
    entry_id: str
    params: dict
    trail: tuple
    canonical: ExtensionSpec
    audit: AuditReport | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {
            "entry": self.entry_id,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
            "trail": [step.to_json() for step in self.trail],
            "audit": None if self.audit is None else {
                "discrepancy": self.audit.discrepancy,
                "derived_sigma_domain": self.audit.derived_sigma_domain,
                "lie_sublocus": self.audit.lie_sublocus,
            },
        }


def _precheck(spec: ExtensionSpec):
    if spec.s != 1:
        raise InvalidSpec(f"canonical forms cover s = 1 only (got s = {spec.s})")
    if spec.r > 3:
        raise InvalidSpec(f"canonical forms cover r <= 3 only (got r = {spec.r})")
    res = validate_spec(spec)
    if not res.valid:
        raise InvalidSpec("; ".join(res.reasons))
    if is_lie(build_algebra(spec)):
        raise LieTypeAlgebra("valid extension is a Lie algebra; the table lists non-Lie types only")


def _normal_trails(spec: ExtensionSpec) -> list[list[TransformStep]]:
    R, L = spec.R[0], spec.L[0]
    use_R = not R.is_zero()
    P = R if use_R else L
    chains = jordan_chains(P)
    if all(c.eigenvalue == 0 for c in chains):
        if not use_R:
            raise NoMatch("nilpotent L with R = 0")
        return [_nilpotent_R_trail(spec)]
    trails = []
    for order in _chain_orders(chains):
        if order[0].eigenvalue == 0:
            continue
        first = _leading_scale(spec, order, use_R)
        mid = apply_trail(spec, first)
        for second in (_secondary_orders(mid) if use_R else [[]]):
            trails.append(first + second)
    return trails


def canonical_match(spec: ExtensionSpec) -> CatalogMatch:
    _precheck(spec)
    rng = random.Random(0)
    best = None
    for base in _normal_trails(spec):
        cur = apply_trail(spec, base)
        R, L = cur.R[0], cur.L[0]
        for entry in catalog():
            if entry.r != spec.r:
                continue
            mparams = _match_matrices(entry, R, L)
            if mparams is None:
                continue
            corr = audit_entry(entry).corrected_sigma_pattern
            for tau in _sigma_candidates(corr):
                params = dict(mparams)
                names = entry.sigma_names()
                for i, st in enumerate(entry.sigma_pattern):
                    if st != ZERO_S:
                        params[names[i]] = tau[i]
                if check_restrictions(entry, params, corr):
                    continue
                key = (entry.priority, ENTRY_ORDER[entry.id], _param_key(entry, params), tau)
                if best is not None and key >= best[0]:
                    continue
                step = _sigma_orbit_step(cur, tau, rng)
                if step is None:
                    continue
                best = (key, entry, params, tuple(base + step), corr)
    if best is None:
        raise NoMatch("no table entry matches the normal form")
    _, entry, params, trail, corr = best
    target = instantiate(entry, params, sigma_pattern=corr)
    if apply_trail(spec, trail) != target:
        raise AssertionError("canonical trail does not reproduce the table instance")
    return CatalogMatch(entry.id, params, trail, target, audit_entry(entry))


def canonicalize_r1(spec: ExtensionSpec):
    """(entry_id, params, trail) of the table instance equivalent to ``spec``."""
    m = canonical_match(spec)
    return m.entry_id, m.params, list(m.trail)


def match_catalog(spec: ExtensionSpec) -> CatalogMatch:
    return canonical_match(spec)


def entry_representatives(entry: TableEntry) -> list[tuple[dict, ExtensionSpec]]:
    """Canonical table instances of ``entry`` reached from its corrected instances.

    Instances that normalize to another row (or to the Lie locus) are skipped,
    so an entry can legitimately have no representative of its own.
    """
    out, seen = [], set()
    for _, spec in corrected_instances(entry):
        if on_lie_locus(spec):
            continue
        m = canonical_match(spec)
        if m.entry_id != entry.id:
            continue
        key = tuple(sorted(m.params.items()))
        if key not in seen:
            seen.add(key)
            out.append((dict(m.params), m.canonical))
    return out


@dataclass(frozen=True)
class OrbitTestResult:
    entry_id: str
    representatives: int
    trials: int
    recovered: int
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return self.trials > 0 and self.recovered == self.trials

    def to_json(self) -> dict:
        return {
            "entry": self.entry_id,
            "representatives": self.representatives,
            "trials": self.trials,
            "recovered": self.recovered,
            "failures": [list(f) for f in self.failures],
        }


def orbit_test(entry_id: str, seeds: int = 100) -> OrbitTestResult:
    """Round-trip ``seeds`` random orbit samples of the entry's canonical instances."""
    entry = get_entry(entry_id)
    reps = entry_representatives(entry)
    if not reps:
        return OrbitTestResult(entry.id, 0, 0, 0, (("no canonical representative",),))
    recovered, failures = 0, []
    for seed in range(seeds):
        params, spec = reps[seed % len(reps)]
        moved, _ = random_orbit_sample(spec, seed)
        try:
            got_id, got_params, _ = canonicalize_r1(moved)
        except NoMatch as exc:
            failures.append((seed, f"no match: {exc}"))
            continue
        if got_id == entry.id and got_params == params:
            recovered += 1
        else:
            failures.append((seed, f"got ({got_id}) {sorted((k, str(v)) for k, v in got_params.items())}"))
    return OrbitTestResult(entry.id, len(reps), seeds, recovered, tuple(failures))
