"""Exhaustive grid check that every valid L(2, 2) is a Lie algebra."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..algebra import is_decomposable, is_lie, nilradical_check
from ..exact_linalg import ZERO, Matrix, Q, commutator, jordan_block, nilindependent_matrices, rref
from ..extension import ExtensionSpec, build_algebra, nilradical_subspace, validate_spec

DEFAULT_GRID = (-1, 0, 1)
SIGMA_KEYS = ((0, 0), (0, 1), (1, 0), (1, 1))


def r1_shapes(grid) -> list[tuple[str, Matrix]]:
    """Jordan shapes of R^1 with a nonzero leading eigenvalue: diagonal and one 2x2 block."""
    out = []
    for l1 in grid:
        if l1 == 0:
            continue
        for l2 in grid:
            if l2 == l1:
                kind = "diag_equal"
            elif l2 == 0:
                kind = "diag_zero"
            else:
                kind = "diag_distinct"
            out.append((kind, Matrix.diag([l1, l2])))
        out.append(("jordan_block", jordan_block(l1, 2)))
    return out


def _grid_matrices(grid):
    for vals in itertools.product(grid, repeat=4):
        yield Matrix.from_rows([vals[:2], vals[2:]])


def _matrix_tuples(R1: Matrix, grid):
    """(L1, R2, L2) on the grid satisfying all commutation and (R + L) R conditions."""
    mats = list(_grid_matrices(grid))
    L1s = [L for L in mats if commutator(L, R1).is_zero() and ((R1 + L) @ R1).is_zero()]
    for L1 in L1s:
        for R2 in mats:
            if not (commutator(L1, R2).is_zero() and ((R1 + L1) @ R2).is_zero()):
                continue
            for L2 in mats:
                if (
                    commutator(L1, L2).is_zero()
                    and commutator(L2, R1).is_zero()
                    and commutator(L2, R2).is_zero()
                    and ((R2 + L2) @ R1).is_zero()
                    and ((R2 + L2) @ R2).is_zero()
                ):
                    yield L1, R2, L2


def _sigma_system(L, R) -> Matrix:
    """Rows of the linear sigma constraints, unknowns ordered by SIGMA_KEYS then coordinate."""
    rows = []
    for a, b, c in itertools.product(range(2), repeat=3):
        for k in range(2):
            row = [ZERO] * 8

            def add(key, M, sign):
                base = SIGMA_KEYS.index(key) * 2
                for j in range(2):
                    row[base + j] += sign * M[j, k]

            add((b, c), L[a], 1)
            add((a, b), R[c], -1)
            add((a, c), L[b], -1)
            rows.append(row)
    return Matrix.from_rows(rows)


def _grid_kernel_points(A: Matrix, grid):
    """Grid points v with A v = 0, enumerated over the free variables of the RREF."""
    E, pivots = rref(A)
    n = A.cols
    free = [j for j in range(n) if j not in pivots]
    gridset = set(grid)
    for vals in itertools.product(grid, repeat=len(free)):
        v = [ZERO] * n
        for j, x in zip(free, vals):
            v[j] = x
        ok = True
        for i, p in enumerate(pivots):
            v[p] = -sum((E[i, j] * v[j] for j in free), ZERO)
            if v[p] not in gridset:
                ok = False
                break
        if ok:
            yield tuple(v)


def enumerate_candidates(grid=DEFAULT_GRID) -> list[tuple[str, ExtensionSpec]]:
    """Every grid spec satisfying the Leibniz identity, in deterministic order."""
    grid = tuple(sorted({Q(g) for g in grid}))
    out = []
    for kind, R1 in r1_shapes(grid):
        for L1, R2, L2 in _matrix_tuples(R1, grid):
            L, R = (L1, L2), (R1, R2)
            for v in _grid_kernel_points(_sigma_system(L, R), grid):
                sigma = {key: v[2 * i: 2 * i + 2] for i, key in enumerate(SIGMA_KEYS)}
                out.append((kind, ExtensionSpec(2, 2, L, R, sigma)))
    return out


def _classify(item):
    idx, kind, spec = item
    alg = build_algebra(spec)
    # a certified nilradical already rules out nilpotent combinations of the x's,
    # so this cheaper test rejects most invalid candidates before full validation
    if not nilradical_check(alg, nilradical_subspace(spec)):
        return idx, kind, "invalid", None, None, None
    if not validate_spec(spec).valid:
        return idx, kind, "invalid", None, None, None
    lie = is_lie(alg)
    r_indep = nilindependent_matrices(list(spec.R)).independent
    decomposable = None if lie else is_decomposable(alg)
    return idx, kind, "valid", lie, r_indep, decomposable


@dataclass(frozen=True)
class L22Report:
    grid: tuple
    raw_space: int
    candidates: int
    valid: int
    lie: int
    non_lie: int
    by_shape: dict = field(default_factory=dict)
    non_lie_examples: tuple = ()
    # breakdown of the survivors; R-nilindependence means R^1, R^2 themselves are
    valid_r_nilindependent: int = 0
    non_lie_r_nilindependent: int = 0
    non_lie_decomposable: int = 0

    @property
    def ok(self) -> bool:
        return self.valid >= 1 and self.non_lie == 0

    def to_json(self) -> dict:
        return {
            "grid": [str(g) for g in self.grid],
            "raw_space": self.raw_space,
            "candidates": self.candidates,
            "valid": self.valid,
            "lie": self.lie,
            "non_lie_survivors": self.non_lie,
            "by_shape": {k: dict(v) for k, v in sorted(self.by_shape.items())},
            "valid_R_nilindependent": self.valid_r_nilindependent,
            "non_lie_R_nilindependent": self.non_lie_r_nilindependent,
            "non_lie_decomposable": self.non_lie_decomposable,
        }


def l22_verify(grid=DEFAULT_GRID, jobs: int = 1) -> L22Report:
    """Classify every grid candidate; ``ok`` means at least one valid algebra and all are Lie."""
    grid = tuple(sorted({Q(g) for g in grid}))
    if not grid:
        raise ValueError("grid must be nonempty")
    cands = enumerate_candidates(grid)
    items = [(i, kind, spec) for i, (kind, spec) in enumerate(cands)]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_classify, items, chunksize=64))
    else:
        results = [_classify(it) for it in items]
    results.sort(key=lambda t: t[0])
    by_shape: dict = {}
    valid = lie = r_valid = r_non_lie = dec = 0
    examples = []
    for idx, kind, status, lie_flag, r_indep, decomposable in results:
        rec = by_shape.setdefault(kind, {"candidates": 0, "valid": 0, "lie": 0})
        rec["candidates"] += 1
        if status == "valid":
            valid += 1
            rec["valid"] += 1
            r_valid += bool(r_indep)
            if lie_flag:
                lie += 1
                rec["lie"] += 1
            else:
                examples.append(cands[idx][1])
                r_non_lie += bool(r_indep)
                dec += bool(decomposable)
    shapes = len(r1_shapes(grid))
    raw = shapes * len(grid) ** 20
    return L22Report(grid, raw, len(items), valid, lie, valid - lie, by_shape, tuple(examples[:5]),
                     r_valid, r_non_lie, dec)
