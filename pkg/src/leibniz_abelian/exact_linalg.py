"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`; floats are rejected at
the boundary.  Matrices are small (the classification never needs more than
8x8), so plain dense row-major storage is used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm
from numbers import Rational
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    IrrationalSpectrum,
    SingularMatrix,
    UnsupportedArity,
    ZeroPolynomial,
)

Vector = tuple  # tuple of Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


def vec(values: Iterable) -> Vector:
    if type(values) is tuple and all(type(v) is Fraction for v in values):
        return values
    return tuple(Q(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def is_zero_vec(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def vadd(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    return tuple(c * x for x in v)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), ZERO)


# ---------------------------------------------------------------------------
# Matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    # construction -----------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(nrows, ncols, tuple(Q(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Matrix":
        return cls.from_rows(cols).T

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.diag([ONE] * n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        e = [ZERO] * (n * n)
        for i, v in enumerate(values):
            e[i * n + i] = Q(v)
        return cls(n, n, tuple(e))

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Matrix":
        e = [ZERO] * (n * n)
        e[i * n + j] = ONE
        return cls(n, n, tuple(e))

    @classmethod
    def block_diag(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        e = [ZERO] * (n * m)
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    e[(r0 + i) * m + c0 + j] = b.entries[i * b.cols + j]
            r0 += b.rows
            c0 += b.cols
        return cls(n, m, tuple(e))

    # access -----------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix[{body}]"

    # arithmetic -------------------------------------------------------------
    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "Matrix":
        c = Q(c)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            n, k, m = self.rows, self.cols, other.cols
            a, b = self.entries, other.entries
            out = []
            for i in range(n):
                ai = a[i * k:(i + 1) * k]
                for j in range(m):
                    s = ZERO
                    for t in range(k):
                        x = ai[t]
                        if x:
                            y = b[t * m + j]
                            if y:
                                s += x * y
                    out.append(s)
            return Matrix(n, m, tuple(out))
        v = tuple(other)
        if len(v) != self.cols:
            raise DimensionMismatch(f"cannot apply {self.shape} to vector of length {len(v)}")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    __mul__ = __matmul__

    @property
    def T(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def trace(self) -> Fraction:
        self._require_square()
        return sum((self[i, i] for i in range(self.rows)), ZERO)

    def _require_square(self):
        if not self.is_square:
            raise DimensionMismatch(f"square matrix required, got {self.shape}")

    def power(self, k: int) -> "Matrix":
        self._require_square()
        if k < 0:
            return self.inverse().power(-k)
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def inverse(self) -> "Matrix":
        self._require_square()
        n = self.rows
        aug = [list(self.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        red, pivots = _rref_rows(aug, n)
        if len(pivots) < n:
            raise SingularMatrix(f"matrix of rank {len(pivots)} < {n} has no inverse")
        return Matrix(n, n, tuple(x for r in red for x in r[n:]))

    def det(self) -> Fraction:
        self._require_square()
        n = self.rows
        a = self.to_rows()
        d = ONE
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                return ZERO
            if p != c:
                a[c], a[p] = a[p], a[c]
                d = -d
            d *= a[c][c]
            inv = ONE / a[c][c]
            for r in range(c + 1, n):
                f = a[r][c] * inv
                if f:
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return d

    def rank(self) -> int:
        return len(rref(self)[1])

    def conjugate(self, S: "Matrix", S_inv: "Matrix | None" = None) -> "Matrix":
        """Return ``S @ self @ S^-1``."""
        return S @ self @ (S.inverse() if S_inv is None else S_inv)


def mat(rows) -> Matrix:
    return rows if isinstance(rows, Matrix) else Matrix.from_rows(rows)


def mat_arith(A: Matrix, B: Matrix | None = None, op: str = "mul", k: int | None = None) -> Matrix:
    """Dispatch helper mirroring the operation table: add, mul, transpose, inverse, power."""
    if op == "add":
        return A + B
    if op == "mul":
        return A @ B
    if op == "transpose":
        return A.T
    if op == "inverse":
        return A.inverse()
    if op == "power":
        return A.power(2 if k is None else k)
    raise ValueError(f"unknown matrix operation {op!r}")


def commutator(A: Matrix, B: Matrix) -> Matrix:
    if not (A.is_square and B.is_square) or A.shape != B.shape:
        raise DimensionMismatch(f"commutator needs equal square shapes, got {A.shape}, {B.shape}")
    return A @ B - B @ A


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------


def _rref_rows(rows: list[list], ncols: int | None = None):
    """In-place reduced row echelon form on a list of lists.

    Only the first ``ncols`` columns are used for pivoting.
    """
    if not rows:
        return rows, []
    width = len(rows[0])
    ncols = width if ncols is None else ncols
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = ONE / pr[c]
        if inv != 1:
            pr = rows[r] = [x * inv for x in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    rows, pivots = _rref_rows(M.to_rows())
    return Matrix(M.rows, M.cols, tuple(x for r in rows for x in r)), pivots


def row_basis(vectors: Iterable[Sequence], n: int | None = None) -> list[Vector]:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    rows = [[Q(x) for x in v] for v in vectors]
    if not rows:
        return []
    red, pivots = _rref_rows(rows)
    return [tuple(r) for r in red[:len(pivots)]]


def nullspace(M: Matrix) -> list[Vector]:
    red, pivots = rref(M)
    free = [j for j in range(M.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * M.cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i, f]
        basis.append(tuple(v))
    return row_basis(basis)


def rank_nullspace(M: Matrix) -> tuple[int, list[Vector]]:
    red, pivots = rref(M)
    return len(pivots), nullspace(M)


def in_span(v: Sequence, basis: Sequence[Sequence]) -> bool:
    if is_zero_vec(v):
        return True
    if not basis:
        return False
    return len(row_basis(list(basis) + [v])) == len(row_basis(basis))


def solve_affine(A: Matrix, b: Sequence) -> tuple[Vector, list[Vector]] | None:
    """Solve ``A x = b``; return (particular solution, nullspace basis) or None."""
    aug = [list(A.row(i)) + [Q(b[i])] for i in range(A.rows)]
    red, pivots = _rref_rows(aug, A.cols)
    for r in red[len(pivots):]:
        if r[-1] != 0:
            return None
    x = [ZERO] * A.cols
    for i, p in enumerate(pivots):
        x[p] = red[i][-1]
    return tuple(x), nullspace(A)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    """Univariate polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Q(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Polynomial":
        return cls([0] * degree + [c])

    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            terms.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    @staticmethod
    def _lift(x) -> "Polynomial":
        return x if isinstance(x, Polynomial) else Polynomial([x])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Q(other)
            return Polynomial([c * x for x in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = Q(c)
        return Polynomial([x / c for x in self.coeffs])

    def __pow__(self, k: int):
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = ZERO if not isinstance(x, Polynomial) else Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [ZERO] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            quot[k - dq] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return Polynomial(quot), Polynomial(rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        return self / self.leading if self.coeffs else self


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _faddeev_leverrier(rows: list[list], n: int, zero, one, exact_div: bool = False) -> list:
    """Characteristic polynomial coefficients over any ring containing Q.

    Returns ``c[0..n]`` (lowest first, c[n] = 1) for det(tI - A).
    """
    coeffs = [zero] * (n + 1)
    coeffs[n] = one
    if n == 0:
        return coeffs
    mk = [[zero] * n for _ in range(n)]  # M_0 = 0
    c_prev = one
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = [[sum((rows[i][t] * mk[t][j] for t in range(n)), zero) for j in range(n)] for i in range(n)]
        for i in range(n):
            am[i][i] = am[i][i] + c_prev
        mk = am
        amk_trace = sum((sum((rows[i][t] * mk[t][i] for t in range(n)), zero) for i in range(n)), zero)
        c = -(amk_trace // k) if exact_div else -amk_trace / k
        coeffs[n - k] = c
        c_prev = c
    return coeffs


def char_poly(M: Matrix) -> Polynomial:
    """Monic det(tI - M)."""
    M._require_square()
    if all(x.denominator == 1 for x in M.entries):
        # integral matrix: the recurrence stays in Z, and plain ints are much faster
        rows = [[int(x) for x in row] for row in M.to_rows()]
        return Polynomial(_faddeev_leverrier(rows, M.rows, 0, 1, exact_div=True))
    return Polynomial(_faddeev_leverrier(M.to_rows(), M.rows, ZERO, ONE))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: Polynomial) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicity, largest root first."""
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has every number as a root")
    roots = []
    coeffs = list(p.coeffs)
    k = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        k += 1
    if k:
        roots.append((ZERO, k))
    q = Polynomial(coeffs)
    if q.degree >= 1:
        den = reduce(lcm, (c.denominator for c in q.coeffs), 1)
        ints = [int(c * den) for c in q.coeffs]
        g = reduce(gcd, ints)
        ints = [c // g for c in ints]
        cands = set()
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                cands.add(Fraction(a, b))
                cands.add(Fraction(-a, b))
        for r in sorted(cands, reverse=True):
            m = 0
            while q.degree >= 1 and q(r) == 0:
                q = q // Polynomial([-r, 1])
                m += 1
            if m:
                roots.append((r, m))
    roots.sort(key=lambda rm: rm[0], reverse=True)
    return roots


def is_nilpotent_matrix(M: Matrix) -> bool:
    M._require_square()
    return M.power(M.rows).is_zero()


# ---------------------------------------------------------------------------
# Jordan form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JordanChain:
    """Generalized eigenvector chain ``[N^{k-1} v, ..., N v, v]`` for one block."""

    eigenvalue: Fraction
    vectors: tuple

    @property
    def size(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class JordanDecomposition:
    J: Matrix
    S: Matrix
    blocks: tuple  # ((eigenvalue, size), ...)


def jordan_block(eigenvalue, size: int) -> Matrix:
    e = [ZERO] * (size * size)
    for i in range(size):
        e[i * size + i] = Q(eigenvalue)
        if i + 1 < size:
            e[i * size + i + 1] = ONE
    return Matrix(size, size, tuple(e))


def jordan_matrix(blocks: Sequence[tuple]) -> Matrix:
    return Matrix.block_diag([jordan_block(lam, k) for lam, k in blocks])


def spectrum(M: Matrix) -> list[tuple[Fraction, int]]:
    """Rational eigenvalues with algebraic multiplicity; raise if not split."""
    p = char_poly(M)
    roots = rational_roots(p)
    if sum(m for _, m in roots) < M.rows:
        residual = p
        for r, m in roots:
            for _ in range(m):
                residual = residual // Polynomial([-r, 1])
        raise IrrationalSpectrum(
            f"characteristic polynomial {p} has irreducible factor {residual}", residual
        )
    return roots


def jordan_chains(M: Matrix) -> list[JordanChain]:
    """Generalized eigenvector chains of ``M`` (unsorted, deterministic)."""
    n = M.rows
    chains: list[JordanChain] = []
    for lam, mult in spectrum(M):
        N = M - Matrix.identity(n).scale(lam)
        kernels = [[]]
        P = Matrix.identity(n)
        for _ in range(mult):
            P = P @ N
            kernels.append(nullspace(P))
            if len(kernels[-1]) == mult:
                break
        top = len(kernels) - 1
        lam_chains: list[list[Vector]] = []
        for k in range(top, 0, -1):
            spanned = list(kernels[k - 1])
            for ch in lam_chains:
                if len(ch) > k:
                    spanned.append(ch[len(ch) - k])  # vector at level k of a longer chain
            for v in kernels[k]:
                if not in_span(v, spanned):
                    chain = [v]
                    for _ in range(k - 1):
                        chain.append(N @ chain[-1])
                    lam_chains.append(chain)
                    spanned.append(v)
        for ch in lam_chains:
            chains.append(JordanChain(lam, tuple(reversed(ch))))
    return chains


def default_block_order(chains: Sequence[JordanChain]) -> list[JordanChain]:
    """Nonzero blocks first (larger blocks, then smaller eigenvalue first); zero blocks last."""
    nonzero = [c for c in chains if c.eigenvalue != 0]
    zero = [c for c in chains if c.eigenvalue == 0]
    nonzero.sort(key=lambda c: (-c.size, c.eigenvalue))
    zero.sort(key=lambda c: -c.size)
    return nonzero + zero


def assemble_jordan(chains: Sequence[JordanChain]) -> JordanDecomposition:
    columns = [v for ch in chains for v in ch.vectors]
    P = Matrix.from_columns(columns)
    S = P.inverse()
    blocks = tuple((ch.eigenvalue, ch.size) for ch in chains)
    return JordanDecomposition(jordan_matrix(blocks), S, blocks)


def jordan_form(M: Matrix) -> JordanDecomposition:
    """Exact Jordan form ``S M S^-1 = J`` with zero-eigenvalue blocks last."""
    M._require_square()
    return assemble_jordan(default_block_order(jordan_chains(M)))


def is_jordan_form(M: Matrix) -> bool:
    n = M.rows
    for i in range(n):
        for j in range(n):
            x = M[i, j]
            if j == i + 1:
                if x not in (0, 1) or (x == 1 and M[i, i] != M[j, j]):
                    return False
            elif i != j and x != 0:
                return False
    return True


def solve_linear_matrix(residual, r: int):
    """Solve residual(X) = 0 for an r x r matrix X, where residual is affine and
    returns a list of matrices. Gives (particular, kernel basis) or None."""
    c = [x for M in residual(Matrix.zeros(r)) for x in M.entries]
    cols = []
    for i in range(r):
        for j in range(r):
            img = [x for M in residual(Matrix.unit(r, i, j)) for x in M.entries]
            cols.append([a - b for a, b in zip(img, c)])
    sol = solve_affine(Matrix.from_columns(cols), [-x for x in c])
    if sol is None:
        return None
    part, kern = sol
    return Matrix(r, r, tuple(part)), [Matrix(r, r, tuple(v)) for v in kern]


# ---------------------------------------------------------------------------
# Nilindependence
# ---------------------------------------------------------------------------


def _clear_denominators(cs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    den = reduce(lcm, (c.denominator for c in cs), 1)
    ints = [int(c * den) for c in cs]
    g = reduce(gcd, ints) or 1
    ints = [x // g for x in ints]
    first = next((x for x in ints if x), 1)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


def _components(*mats: Matrix) -> list[list[int]]:
    """Strongly connected classes of the joint nonzero pattern.

    After a simultaneous permutation the matrices are block upper triangular with
    these classes as diagonal blocks, so characteristic polynomials factor over them.
    """
    n = mats[0].rows
    reach = [[i == j or any(M[i, j] for M in mats) for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                row_k = reach[k]
                row_i = reach[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    seen, groups = set(), []
    for i in range(n):
        if i in seen:
            continue
        comp = [j for j in range(n) if reach[i][j] and reach[j][i]]
        seen.update(comp)
        groups.append(comp)
    return groups


def interpolate(xs: Sequence, ys: Sequence) -> Polynomial:
    """Unique polynomial of degree < len(xs) through the points (Newton form)."""
    xs = [Q(x) for x in xs]
    coef = [Q(y) for y in ys]
    m = len(xs)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = Polynomial([coef[-1]]) if m else Polynomial()
    for i in range(m - 2, -1, -1):
        p = p * Polynomial([-xs[i], ONE]) + coef[i]
    return p


def pencil_char_poly(X1: Matrix, X2: Matrix) -> list[Polynomial]:
    """Coefficients (in lambda, lowest first) of det(lambda I - X1 - t X2) as polynomials in t.

    Each coefficient has degree <= n in t, so n + 1 exact evaluations determine it.
    """
    n = X1.rows
    ts = [Fraction(k) for k in range(n + 1)]
    samples = [char_poly(X1 + X2.scale(t)) for t in ts]
    return [interpolate(ts, [q.coeff(k) for q in samples]) for k in range(n + 1)]


@dataclass(frozen=True)
class NilindependenceResult:
    independent: bool
    certificate: str
    witness: tuple | None = None  # combination coefficients when dependent and rational

    def __bool__(self):
        return self.independent

    def __iter__(self):
        return iter((self.independent, self.certificate))


def nilindependent_matrices(Xs: Sequence[Matrix]) -> NilindependenceResult:
    """Decide whether no nonzero combination of ``Xs`` is nilpotent (over the algebraic closure)."""
    Xs = list(Xs)
    if not Xs:
        return NilindependenceResult(True, "empty set")
    if len(Xs) > 2:
        raise UnsupportedArity(f"nilindependence supported for at most 2 matrices, got {len(Xs)}")
    n = Xs[0].rows
    if any(X.shape != (n, n) for X in Xs):
        raise DimensionMismatch("matrices must be square of equal size")
    if len(Xs) == 1:
        if is_nilpotent_matrix(Xs[0]):
            return NilindependenceResult(False, "X1 is nilpotent (c = 1)", (ONE,))
        return NilindependenceResult(True, f"char poly {char_poly(Xs[0])} is not t^{n}")
    X1, X2 = Xs
    if is_nilpotent_matrix(X2):
        return NilindependenceResult(False, "X2 is nilpotent (c = (0, 1))", (ZERO, ONE))
    # the pencil is nilpotent exactly where every diagonal block is
    g = Polynomial()
    for comp in _components(X1, X2):
        sub1 = Matrix.from_rows([[X1[i, j] for j in comp] for i in comp])
        sub2 = Matrix.from_rows([[X2[i, j] for j in comp] for i in comp])
        for c in pencil_char_poly(sub1, sub2)[: len(comp)]:
            g = poly_gcd(g, c)
    if g.is_zero():
        return NilindependenceResult(False, "X1 + t X2 nilpotent for every t (c = (1, 0))", (ONE, ZERO))
    if g.degree == 0:
        return NilindependenceResult(True, "gcd of pencil coefficients is constant")
    roots = rational_roots(g)
    if roots:
        t0 = roots[-1][0]
        w = _clear_denominators((ONE, t0))
        return NilindependenceResult(
            False, f"{w[0]}*X1 + {w[1]}*X2 is nilpotent (gcd {g})", w
        )
    return NilindependenceResult(False, f"X1 + t X2 nilpotent at the irrational roots of {g}", None)
