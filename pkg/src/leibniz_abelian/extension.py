"""Extensions L(r, s) of the abelian algebra A(r) by s elements x_1..x_s.

Products on the basis (n_1..n_r, x_1..x_s)::

    [n_i, n_j] = 0
    [x_a, n_i] = sum_j L^a_ij n_j
    [n_i, x_a] = sum_j R^a_ij n_j
    [x_a, x_b] = sum_j sigma^ab_j n_j

Indices a, b are 0-based in code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import (
    LeibnizAlgebra,
    NilradicalResult,
    Subspace,
    nilindependent_elements,
    nilradical_check,
)
from .errors import DimensionMismatch, NotJordanForm
from .exact_linalg import (
    ZERO,
    Matrix,
    Vector,
    commutator,
    is_jordan_form,
    is_zero_vec,
    mat,
    nullspace,
    solve_linear_matrix,
    vec,
    zero_vec,
)


@dataclass(frozen=True)
class ExtensionSpec:
    r: int
    s: int
    L: tuple
    R: tuple
    sigma: Mapping  # (a, b) -> Vector of length r

    def __post_init__(self):
        object.__setattr__(self, "L", tuple(mat(m) for m in self.L))
        object.__setattr__(self, "R", tuple(mat(m) for m in self.R))
        sig = {}
        for a in range(self.s):
            for b in range(self.s):
                v = self.sigma.get((a, b)) if self.sigma else None
                sig[(a, b)] = zero_vec(self.r) if v is None else vec(v)
        extra = set(self.sigma or {}) - set(sig)
        if extra:
            raise DimensionMismatch(f"sigma indices out of range: {sorted(extra)}")
        object.__setattr__(self, "sigma", _FrozenDict(sig))
        if len(self.L) != self.s or len(self.R) != self.s:
            raise DimensionMismatch(f"need {self.s} L and R matrices")
        for m in self.L + self.R:
            if m.shape != (self.r, self.r):
                raise DimensionMismatch(f"action matrices must be {self.r}x{self.r}, got {m.shape}")
        for v in sig.values():
            if len(v) != self.r:
                raise DimensionMismatch(f"sigma vectors must have length {self.r}")

    @classmethod
    def single(cls, R, L, sigma) -> "ExtensionSpec":
        """Convenience constructor for s = 1."""
        R, L = mat(R), mat(L)
        return cls(R.rows, 1, (L,), (R,), {(0, 0): sigma})

    @property
    def n(self) -> int:
        return self.r + self.s

    def key(self):
        return (self.r, self.s, self.L, self.R, tuple(sorted(self.sigma.items())))

    def __eq__(self, other):
        return isinstance(other, ExtensionSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class _FrozenDict(dict):
    def __setitem__(self, k, v):
        raise TypeError("immutable")

    def __hash__(self):
        return hash(tuple(sorted(self.items())))


def labels_for(r: int, s: int) -> list[str]:
    if s == 1:
        xs = ["x"]
    else:
        xs = [f"x{a + 1}" for a in range(s)]
    ns = ["n"] if r == 1 else [f"n{i + 1}" for i in range(r)]
    return ns + xs


def build_algebra(spec: ExtensionSpec) -> LeibnizAlgebra:
    r, s = spec.r, spec.s
    n = r + s
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for a in range(s):
        La, Ra = spec.L[a], spec.R[a]
        for i in range(r):
            for j in range(r):
                c[r + a][i][j] = La[i, j]
                c[i][r + a][j] = Ra[i, j]
        for b in range(s):
            for j, v in enumerate(spec.sigma[(a, b)]):
                c[r + a][r + b][j] = v
    return LeibnizAlgebra(n, c, labels_for(r, s))


def spec_from_algebra(alg: LeibnizAlgebra, r: int) -> ExtensionSpec:
    """Inverse of :func:`build_algebra` (structure constants outside the pattern are ignored)."""
    s = alg.dim - r
    L, R, sigma = [], [], {}
    for a in range(s):
        L.append(Matrix.from_rows([[alg.c[r + a][i][j] for j in range(r)] for i in range(r)]))
        R.append(Matrix.from_rows([[alg.c[i][r + a][j] for j in range(r)] for i in range(r)]))
        for b in range(s):
            sigma[(a, b)] = tuple(alg.c[r + a][r + b][:r])
    return ExtensionSpec(r, s, tuple(L), tuple(R), sigma)


def bounds_ok(r: int, s: int) -> bool:
    n = r + s
    return r >= 1 and 1 <= s <= 2 and 2 * r >= n and r <= n - 1 and 2 * s <= n


def _row_times(v: Vector, M: Matrix) -> Vector:
    """Row vector v^T M."""
    return tuple(sum((v[j] * M[j, k] for j in range(len(v))), ZERO) for k in range(M.cols))


@dataclass(frozen=True)
class ConstraintReport:
    eq5a: tuple
    eq5b: tuple
    eq5c: tuple
    eq6: tuple  # (a, b, c, k)
    lemma31: tuple  # (a, b, c)
    bounds_ok: bool
    nilindependent: bool | None = None

    @property
    def identity_ok(self) -> bool:
        return not (self.eq5a or self.eq5b or self.eq5c or self.eq6)


def matrix_constraints(spec: ExtensionSpec) -> tuple[list, list, list]:
    s = spec.s
    e5a, e5b, e5c = [], [], []
    for a in range(s):
        for b in range(s):
            if not commutator(spec.L[a], spec.L[b]).is_zero():
                e5a.append((a, b))
            if not commutator(spec.L[a], spec.R[b]).is_zero():
                e5b.append((a, b))
            if not ((spec.R[a] + spec.L[a]) @ spec.R[b]).is_zero():
                e5c.append((a, b))
    return e5a, e5b, e5c


def sigma_constraints(spec: ExtensionSpec) -> list[tuple]:
    """sigma^bc L^a - sigma^ab R^c - sigma^ac L^b = 0 for all (a, b, c), componentwise in k."""
    s = spec.s
    out = []
    for a in range(s):
        for b in range(s):
            for c in range(s):
                t1 = _row_times(spec.sigma[(b, c)], spec.L[a])
                t2 = _row_times(spec.sigma[(a, b)], spec.R[c])
                t3 = _row_times(spec.sigma[(a, c)], spec.L[b])
                for k in range(spec.r):
                    if t1[k] - t2[k] - t3[k] != 0:
                        out.append((a, b, c, k))
    return out


def lemma31_violations(spec: ExtensionSpec) -> list[tuple]:
    """(a, b, c) where sigma^aa or sigma^ab + sigma^ba leaves NS((R^c)^T)."""
    s = spec.s
    out = []
    for a in range(s):
        for b in range(a, s):
            if a == b:
                v = spec.sigma[(a, a)]
            else:
                v = tuple(x + y for x, y in zip(spec.sigma[(a, b)], spec.sigma[(b, a)]))
            for c in range(s):
                if not is_zero_vec(spec.R[c].T @ v):
                    out.append((a, b, c))
    return out


def check_structure_constraints(spec: ExtensionSpec) -> ConstraintReport:
    e5a, e5b, e5c = matrix_constraints(spec)
    return ConstraintReport(
        eq5a=tuple(e5a),
        eq5b=tuple(e5b),
        eq5c=tuple(e5c),
        eq6=tuple(sigma_constraints(spec)),
        lemma31=tuple(lemma31_violations(spec)),
        bounds_ok=bounds_ok(spec.r, spec.s),
    )


@dataclass(frozen=True)
class LemmaReport:
    lemma31: tuple
    lemma41_part1: bool | None  # sigma in NS(R^T), s = 1 only
    lemma41_part2: tuple | None  # (i, j) with R_ij != 0 but sigma_i != 0

    @property
    def ok(self) -> bool:
        return (
            not self.lemma31
            and self.lemma41_part1 is not False
            and not self.lemma41_part2
        )


def lemma_checks(spec: ExtensionSpec, part2: bool = True) -> LemmaReport:
    """Null-space conditions on sigma; for s = 1 also the entrywise Jordan-form condition.

    The entrywise condition is only meaningful with R in Jordan form; pass
    ``part2=False`` to skip it for arbitrary bases.
    """
    l31 = tuple(lemma31_violations(spec))
    if spec.s != 1:
        return LemmaReport(l31, None, None)
    R, sigma = spec.R[0], spec.sigma[(0, 0)]
    p1 = is_zero_vec(R.T @ sigma)
    p2 = None
    if part2:
        if not is_jordan_form(R):
            raise NotJordanForm("entrywise sigma condition requires R in Jordan form")
        p2 = tuple(
            (i, j) for i in range(spec.r) for j in range(spec.r) if R[i, j] != 0 and sigma[i] != 0
        )
    return LemmaReport(l31, p1, p2)


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    report: ConstraintReport
    nilradical: NilradicalResult | None
    reasons: tuple = field(default=())

    def __bool__(self):
        return self.valid


def x_vectors(spec: ExtensionSpec) -> list[Vector]:
    n = spec.n
    return [tuple(Fraction(int(j == spec.r + a)) for j in range(n)) for a in range(spec.s)]


def nilradical_subspace(spec: ExtensionSpec) -> Subspace:
    n = spec.n
    return Subspace.span(n, [tuple(Fraction(int(j == i)) for j in range(n)) for i in range(spec.r)])


def validate_spec(spec: ExtensionSpec) -> ValidationResult:
    reasons = []
    base = check_structure_constraints(spec)
    if not base.bounds_ok:
        reasons.append(f"bounds violated: r={spec.r}, s={spec.s} (need n/2 <= r <= n-1, 1 <= s <= 2)")
    if not base.identity_ok:
        reasons.append("Leibniz identity fails (structure constraints violated)")
    alg = build_algebra(spec)
    nilind = None
    if spec.s >= 1 and spec.s <= 2:
        nilind = nilindependent_elements(alg, x_vectors(spec))
        if not nilind:
            reasons.append("extension elements are not nilindependent")
    report = ConstraintReport(
        base.eq5a, base.eq5b, base.eq5c, base.eq6, base.lemma31, base.bounds_ok, nilind
    )
    nil = None
    if base.identity_ok and spec.s in (1, 2):
        nil = nilradical_check(alg, nilradical_subspace(spec))
        if not nil:
            reasons.append(f"span of n's is not the nilradical: {nil.reason}")
    valid = not reasons
    return ValidationResult(valid, report, nil, tuple(reasons))


@dataclass(frozen=True)
class SingleSolution:
    """All (L, sigma) compatible with a fixed R when s = 1.

    L ranges over ``L_particular + span(L_basis)``; sigma over span(sigma_basis).
    """

    R: Matrix
    L_particular: Matrix
    L_basis: tuple
    sigma_basis: tuple

    @property
    def L_unique(self) -> bool:
        return not self.L_basis


def solve_single_constraints(R) -> SingleSolution:
    """Solve [L, R] = 0 and (R + L) R = 0 for L, then the sigma condition.

    For s = 1 the sigma condition reduces to R^T sigma = 0 and does not involve L.
    """
    R = mat(R)
    r = R.rows
    sol = solve_linear_matrix(lambda L: [commutator(L, R), (R + L) @ R], r)
    # L = -R always solves both equations, so the system is consistent
    part, kern = sol
    sig = nullspace(R.T)
    return SingleSolution(R, part, tuple(kern), tuple(sig))
