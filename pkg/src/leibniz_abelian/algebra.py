"""Finite-dimensional left Leibniz algebras given by structure constants."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NotSolvable, UnsupportedArity, UnsupportedCodimension
from .exact_linalg import (
    ONE,
    ZERO,
    Matrix,
    Polynomial,
    char_poly,
    Vector,
    in_span,
    is_nilpotent_matrix,
    is_zero_vec,
    nilindependent_matrices,
    nullspace,
    row_basis,
    vec,
)


@dataclass(frozen=True)
class Subspace:
    """Subspace of F^n stored by its reduced echelon basis, so ``==`` is exact."""

    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, ambient_dim: int, vectors) -> "Subspace":
        return cls(ambient_dim, tuple(row_basis(list(vectors))))

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls.span(n, [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        return in_span(v, self.basis)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)


class LeibnizAlgebra:
    """Algebra with ``[e_i, e_j] = sum_k c[i][j][k] e_k``.

    ``verified`` is only ever set by :func:`check_left_leibniz`.
    """

    def __init__(self, dim: int, c, basis_labels: Sequence[str] | None = None):
        self.dim = dim
        labels = list(basis_labels) if basis_labels is not None else [f"e{i + 1}" for i in range(dim)]
        if len(labels) != dim:
            raise DimensionMismatch(f"{len(labels)} labels for dimension {dim}")
        if len(c) != dim or any(len(ci) != dim or any(len(cij) != dim for cij in ci) for ci in c):
            raise DimensionMismatch(f"structure constants must be {dim}x{dim}x{dim}")
        self.basis_labels = tuple(labels)
        self.c = tuple(tuple(vec(cij) for cij in ci) for ci in c)
        self.verified = False
        self._ops = None

    @classmethod
    def from_brackets(cls, labels: Sequence[str], brackets: dict) -> "LeibnizAlgebra":
        """``brackets`` maps (label_i, label_j) -> {label_k: coefficient}."""
        n = len(labels)
        idx = {lab: i for i, lab in enumerate(labels)}
        c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (a, b), rhs in brackets.items():
            for lab, coef in rhs.items():
                c[idx[a]][idx[b]][idx[lab]] += Fraction(coef)
        return cls(n, c, labels)

    @classmethod
    def abelian(cls, r: int, labels=None) -> "LeibnizAlgebra":
        labels = labels or [f"n{i + 1}" for i in range(r)]
        return cls(r, [[[ZERO] * r for _ in range(r)] for _ in range(r)], labels)

    def __eq__(self, other):
        return isinstance(other, LeibnizAlgebra) and self.dim == other.dim and self.c == other.c

    def __hash__(self):
        return hash((self.dim, self.c))

    def __repr__(self):
        return f"LeibnizAlgebra(dim={self.dim}, labels={list(self.basis_labels)})"

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(i == j)) for j in range(self.dim))

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.c[i][j]

    def operators(self) -> list[tuple[Matrix, Matrix]]:
        """Coordinate operators (L_{e_i}, R_{e_i}) for every basis element, cached."""
        if self._ops is None:
            n = self.dim
            ops = []
            for i in range(n):
                # column j of L_{e_i} is [e_i, e_j]; column j of R_{e_i} is [e_j, e_i]
                Lm = Matrix.from_columns([self.c[i][j] for j in range(n)]) if n else Matrix.zeros(0)
                Rm = Matrix.from_columns([self.c[j][i] for j in range(n)]) if n else Matrix.zeros(0)
                ops.append((Lm, Rm))
            self._ops = ops
        return self._ops


def _check_vec(alg: LeibnizAlgebra, x) -> Vector:
    x = vec(x)
    if len(x) != alg.dim:
        raise DimensionMismatch(f"vector of length {len(x)} in algebra of dimension {alg.dim}")
    return x


def bracket(alg: LeibnizAlgebra, x, y) -> Vector:
    x = _check_vec(alg, x)
    y = _check_vec(alg, y)
    n = alg.dim
    out = [ZERO] * n
    for i in range(n):
        xi = x[i]
        if not xi:
            continue
        ci = alg.c[i]
        for j in range(n):
            yj = y[j]
            if not yj:
                continue
            f = xi * yj
            for k, ck in enumerate(ci[j]):
                if ck:
                    out[k] += f * ck
    return tuple(out)


def mult_operators(alg: LeibnizAlgebra, x) -> tuple[Matrix, Matrix]:
    """Coordinate matrices of ``y -> [x, y]`` and ``y -> [y, x]``."""
    x = _check_vec(alg, x)
    n = alg.dim
    L = Matrix.zeros(n)
    R = Matrix.zeros(n)
    for i, (Li, Ri) in enumerate(alg.operators()):
        if x[i]:
            L = L + Li.scale(x[i])
            R = R + Ri.scale(x[i])
    return L, R


@dataclass(frozen=True)
class Violation:
    triple: tuple  # (i, j, k) basis indices
    residual: Vector  # [x,[y,z]] - [[x,y],z] - [y,[x,z]]


def check_left_leibniz(alg: LeibnizAlgebra) -> list[Violation]:
    n = alg.dim
    e = [alg.basis_vector(i) for i in range(n)]
    out = []
    for i in range(n):
        for j in range(n):
            xy = alg.c[i][j]
            for k in range(n):
                lhs = bracket(alg, e[i], alg.c[j][k])
                r1 = bracket(alg, xy, e[k])
                r2 = bracket(alg, e[j], alg.c[i][k])
                res = tuple(a - b - c for a, b, c in zip(lhs, r1, r2))
                if not is_zero_vec(res):
                    out.append(Violation((i, j, k), res))
    if not out:
        alg.verified = True
    return out


def antisymmetry_failures(alg: LeibnizAlgebra) -> list[tuple[int, int]]:
    n = alg.dim
    return [
        (i, j)
        for i in range(n)
        for j in range(i, n)
        if any(a + b for a, b in zip(alg.c[i][j], alg.c[j][i]))
    ]


def is_lie(alg: LeibnizAlgebra) -> bool:
    return not antisymmetry_failures(alg) and not check_left_leibniz(alg)


# ---------------------------------------------------------------------------
# Series
# ---------------------------------------------------------------------------


def product_space(alg: LeibnizAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """span{[u, v] : u in U, v in V}."""
    return Subspace.span(alg.dim, [bracket(alg, u, v) for u in U.basis for v in V.basis])


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    terms: tuple
    stabilized: bool
    terminates_at_zero: bool

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(t.dim for t in self.terms)


def series(alg: LeibnizAlgebra, kind: str = "derived") -> SeriesReport:
    """Derived series (L^(1) = [L,L], L^(k+1) = [L^(k), L^(k)]) or lower central
    series (L^2 = [L,L], L^(k+1) = [L, L^k]); stops at zero or at the first repeat."""
    if kind in ("lower", "lower_central"):
        kind = "lower_central"
    elif kind != "derived":
        raise ValueError(f"unknown series kind {kind!r}")
    whole = Subspace.whole(alg.dim)
    term = product_space(alg, whole, whole)
    terms = [term]
    while term.dim > 0:
        nxt = product_space(alg, term, term) if kind == "derived" else product_space(alg, whole, term)
        if nxt == term:
            return SeriesReport(kind, tuple(terms), True, False)
        terms.append(nxt)
        term = nxt
    return SeriesReport(kind, tuple(terms), False, True)


def solvability_predicates(alg: LeibnizAlgebra) -> tuple[bool, bool]:
    solvable = series(alg, "derived").terminates_at_zero
    nilpotent = series(alg, "lower_central").terminates_at_zero
    return solvable, nilpotent


def left_annihilator(alg: LeibnizAlgebra) -> Subspace:
    # x in Ann iff sum_i x_i c[i][j][k] = 0 for all j, k
    n = alg.dim
    if n == 0:
        return Subspace.zero(0)
    rows = [[alg.c[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    return Subspace.span(n, nullspace(Matrix.from_rows(rows)))


def is_nilpotent_element(alg: LeibnizAlgebra, x) -> bool:
    L, R = mult_operators(alg, x)
    return is_nilpotent_matrix(L) and is_nilpotent_matrix(R)


def stacked_operator(alg: LeibnizAlgebra, x) -> Matrix:
    """block_diag(L_x, R_x): nilpotent exactly when x is a nilpotent element."""
    L, R = mult_operators(alg, x)
    return Matrix.block_diag([L, R])


def nilindependent_elements(alg: LeibnizAlgebra, xs) -> bool:
    xs = list(xs)
    if len(xs) > 2:
        raise UnsupportedArity(f"at most 2 elements supported, got {len(xs)}")
    return nilindependent_matrices([stacked_operator(alg, x) for x in xs]).independent


def ideal_test(alg: LeibnizAlgebra, U: Subspace) -> bool:
    n = alg.dim
    for u in U.basis:
        for i in range(n):
            e = alg.basis_vector(i)
            if not U.contains(bracket(alg, e, u)) or not U.contains(bracket(alg, u, e)):
                return False
    return True


def subalgebra_is_nilpotent(alg: LeibnizAlgebra, U: Subspace) -> bool:
    """Lower central series of U computed with the ambient bracket."""
    term = product_space(alg, U, U)
    while term.dim:
        nxt = product_space(alg, U, term)
        if nxt == term:
            return False
        term = nxt
    return True


def _complement(U: Subspace) -> list[Vector]:
    n = U.ambient_dim
    pivots = [next(j for j, x in enumerate(v) if x) for v in U.basis]
    return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n) if i not in pivots]


def _restricted_left(alg: LeibnizAlgebra, y, U: Subspace) -> Matrix:
    """Matrix of u -> [y, u] on U, in the coordinates of U's echelon basis."""
    pivots = [next(j for j, x in enumerate(v) if x) for v in U.basis]
    cols = []
    for u in U.basis:
        w = bracket(alg, y, u)
        cols.append(tuple(w[p] for p in pivots))
    return Matrix.from_columns(cols)


@dataclass(frozen=True)
class NilradicalResult:
    is_nilradical: bool
    reason: str

    def __bool__(self):
        return self.is_nilradical

    def __iter__(self):
        return iter((self.is_nilradical, self.reason))


def nilradical_check(alg: LeibnizAlgebra, candidate: Subspace) -> NilradicalResult:
    """Certify that ``candidate`` is the maximal nilpotent ideal (codimension <= 2)."""
    n = alg.dim
    codim = n - candidate.dim
    if codim > 2:
        raise UnsupportedCodimension(f"codimension {codim} > 2")
    solvable, nilpotent = solvability_predicates(alg)
    if not solvable:
        raise NotSolvable("nilradical certification requires a solvable algebra")
    if not ideal_test(alg, candidate):
        return NilradicalResult(False, "candidate is not an ideal")
    if not subalgebra_is_nilpotent(alg, candidate):
        if candidate.dim == n:
            lcs = series(alg, "lower_central")
            return NilradicalResult(
                False, f"candidate is not nilpotent: lower central series stabilizes at dims {lcs.dims}"
            )
        return NilradicalResult(False, "candidate is not nilpotent")
    whole = Subspace.whole(n)
    if not candidate.contains_subspace(product_space(alg, whole, whole)):
        return NilradicalResult(False, "candidate does not contain [L, L]")
    if codim == 0:
        return NilradicalResult(True, "algebra is nilpotent and equals its nilradical")
    if codim == 1:
        if nilpotent:
            lcs = series(alg, "lower_central")
            return NilradicalResult(False, f"whole algebra is nilpotent (lower central dims {lcs.dims})")
        return NilradicalResult(True, "only larger ideal is the algebra itself, which is not nilpotent")
    # codim 2: every U + Fy is an ideal because [L, L] lies in U; U + Fy is nilpotent
    # iff left multiplication by y is nilpotent on U (U abelian) -- decided for all
    # lines at once by nilindependence of the two restricted operators.
    if product_space(alg, candidate, candidate).dim:
        raise UnsupportedCodimension("codimension-2 certification needs an abelian candidate")
    w1, w2 = _complement(candidate)
    res = nilindependent_matrices([_restricted_left(alg, w1, candidate), _restricted_left(alg, w2, candidate)])
    if not res.independent:
        return NilradicalResult(False, f"a larger nilpotent ideal exists: {res.certificate}")
    return NilradicalResult(True, "no intermediate ideal is nilpotent")


def change_basis(alg: LeibnizAlgebra, P: Matrix, labels=None) -> LeibnizAlgebra:
    """Structure constants in the basis whose i-th vector is row i of ``P`` (old coordinates)."""
    n = alg.dim
    if P.shape != (n, n):
        raise DimensionMismatch(f"basis change must be {n}x{n}")
    P_inv = P.inverse()
    rows = [P.row(i) for i in range(n)]
    c = []
    for i in range(n):
        ci = []
        for j in range(n):
            w = bracket(alg, rows[i], rows[j])
            # w = sum_k c'_k rows[k]  <=>  c' = w P^{-1} (row vector)
            ci.append(tuple(sum((w[t] * P_inv[t, k] for t in range(n)), ZERO) for k in range(n)))
        c.append(ci)
    return LeibnizAlgebra(n, c, labels or alg.basis_labels)


# ---------------------------------------------------------------------------
# Centroid and decomposability
# ---------------------------------------------------------------------------


def centroid_basis(alg: LeibnizAlgebra) -> list[Matrix]:
    """Basis of {T : T[x, y] = [Tx, y] = [x, Ty]} as coordinate matrices."""
    n = alg.dim
    c = alg.c
    rows = []
    # unknown T[a][b] sits at index a * n + b, and T e_b = sum_a T[a][b] e_a
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = [ZERO] * (n * n)
                right = [ZERO] * (n * n)
                for m in range(n):
                    left[k * n + m] += c[i][j][m]
                    right[k * n + m] += c[i][j][m]
                for a in range(n):
                    left[a * n + i] -= c[a][j][k]
                    right[a * n + j] -= c[i][a][k]
                rows.append(left)
                rows.append(right)
    return [Matrix(n, n, tuple(v)) for v in nullspace(Matrix.from_rows(rows))]


def is_decomposable(alg: LeibnizAlgebra, tries: int = 8, seed: int = 0) -> bool:
    """True if the algebra splits as a direct sum of two nonzero ideals.

    A splitting exists iff the centroid has a nontrivial idempotent, iff some
    centroid element has two distinct eigenvalues. Random integer combinations
    find such an element with high probability; a True answer is always certain.
    """
    n = alg.dim
    if n < 2:
        return False
    basis = centroid_basis(alg)
    rng = random.Random(seed)
    for _ in range(tries):
        T = Matrix.zeros(n)
        for B in basis:
            T = T + B.scale(rng.randint(-20, 20))
        p = char_poly(T)
        lam = -p.coeff(n - 1) / n
        if p != Polynomial([-lam, ONE]) ** n:
            return True
    return False
