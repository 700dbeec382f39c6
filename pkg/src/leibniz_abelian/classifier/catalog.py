"""The printed classification table of non-Lie L(r, 1), r = 1, 2, 3, stored verbatim."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ..errors import MissingParameter, RestrictionViolated, UnknownCase
from ..exact_linalg import ZERO, Matrix, Q
from ..extension import ExtensionSpec


@dataclass(frozen=True)
class Affine:
    """const + sum coeffs[p] * p, for a table cell such as ``0``, ``-1`` or ``-a``."""

    const: Fraction
    coeffs: tuple  # ((param, coeff), ...)

    @classmethod
    def parse(cls, text: str) -> "Affine":
        text = text.replace(" ", "")
        m = re.fullmatch(r"([+-]?)([a-z])", text)
        if m:
            return cls(ZERO, ((m.group(2), Fraction(-1 if m.group(1) == "-" else 1)),))
        return cls(Q(text), ())

    @property
    def params(self) -> tuple[str, ...]:
        return tuple(p for p, _ in self.coeffs)

    def evaluate(self, params: Mapping) -> Fraction:
        return self.const + sum((c * Q(params[p]) for p, c in self.coeffs), ZERO)

    def __neg__(self) -> "Affine":
        return Affine(-self.const, tuple((p, -c) for p, c in self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return str(self.const)
        (p, c), = self.coeffs
        return p if c == 1 else f"-{p}"


def _pattern(rows) -> tuple:
    return tuple(tuple(Affine.parse(str(x)) for x in row) for row in rows)


def _neg_pattern(pat) -> tuple:
    return tuple(tuple(-x for x in row) for row in pat)


# sigma coordinate statuses
ZERO_S, FREE_S, NONZERO_S = "zero", "free", "nonzero"

RESTRICTIONS = {
    "nonzero": ("!= 0", lambda v: v != 0),
    "ne_minus1": ("!= -1", lambda v: v != -1),
    "not_0_1": ("not in {0, 1}", lambda v: v not in (0, 1)),
}


@dataclass(frozen=True)
class TableEntry:
    id: str
    r: int
    R_pattern: tuple
    L_pattern: tuple
    sigma_pattern: tuple  # per coordinate: zero | free | nonzero
    printed_sigma: str
    printed_restrictions: str
    restrictions: tuple = ()  # ((param, restriction key), ...)
    not_all_zero: bool = False  # "not both zero"
    sigma_order_convention: tuple | None = None  # (i, j): representative has sigma_i >= sigma_j
    priority: int = 0
    note: str = ""

    @property
    def matrix_params(self) -> tuple[str, ...]:
        names = []
        for pat in (self.R_pattern, self.L_pattern):
            for row in pat:
                for cell in row:
                    for p in cell.params:
                        if p not in names:
                            names.append(p)
        return tuple(sorted(names))

    def sigma_names(self) -> tuple[str, ...]:
        return ("sigma",) if self.r == 1 else tuple(f"sigma{i + 1}" for i in range(self.r))

    @property
    def sigma_params(self) -> tuple[str, ...]:
        names = self.sigma_names()
        return tuple(names[i] for i, st in enumerate(self.sigma_pattern) if st != ZERO_S)

    @property
    def params(self) -> tuple[str, ...]:
        return self.matrix_params + self.sigma_params

    def restriction_map(self) -> dict:
        return dict(self.restrictions)

    def R(self, params: Mapping) -> Matrix:
        return Matrix.from_rows([[c.evaluate(params) for c in row] for row in self.R_pattern])

    def L(self, params: Mapping) -> Matrix:
        return Matrix.from_rows([[c.evaluate(params) for c in row] for row in self.L_pattern])

    def pattern_text(self, which: str) -> str:
        pat = self.R_pattern if which == "R" else self.L_pattern
        return "[" + "; ".join(" ".join(str(c) for c in row) for row in pat) + "]"


def _e(entry_id, r, R, L, sigma, printed_sigma, printed_restr="", restrictions=(), **kw):
    Rp = _pattern(R)
    Lp = _neg_pattern(Rp) if L == "-R" else _pattern(L)
    return TableEntry(
        entry_id, r, Rp, Lp, tuple(sigma), printed_sigma, printed_restr, tuple(restrictions), **kw
    )


Z2 = [[0, 0], [0, 0]]
Z3 = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
E12 = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
D100 = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
D1a0 = [[1, 0, 0], [0, "a", 0], [0, 0, 0]]
J1_0 = [[1, 1, 0], [0, 1, 0], [0, 0, 0]]
One_J0 = [[1, 0, 0], [0, 0, 1], [0, 0, 0]]
F, Zr, NZ = FREE_S, ZERO_S, NONZERO_S

_ENTRIES = (
    _e("1", 1, [[0]], [[1]], [F], "sigma in F"),
    _e("2.1", 2, Z2, [[1, 0], [0, 0]], [Zr, F], "sigma1 = 0, sigma2 in F"),
    _e("2.2", 2, Z2, [[1, 0], [0, "a"]], [Zr, Zr], "sigma1, sigma2 = 0", "a != 0 in F",
       [("a", "nonzero")]),
    _e("2.3", 2, Z2, [[1, 1], [0, 1]], [Zr, Zr], "sigma1, sigma2 = 0"),
    _e("2.4", 2, [[1, 0], [0, 0]], [[-1, 0], [0, "a"]], [F, Zr], "sigma1 in F, sigma2 = 0",
       "a != 0 in F", [("a", "nonzero")]),
    _e("2.5", 2, [[1, 0], [0, 0]], "-R", [F, F], "sigma1, sigma2 in F, not both zero",
       not_all_zero=True),
    _e("3.1", 3, Z3, D100, [Zr, F, F], "sigma1 = 0; sigma2, sigma3 in F"),
    _e("3.2", 3, Z3, [[1, 0, 0], [0, "a", 0], [0, 0, 0]], [Zr, Zr, F],
       "sigma1, sigma2 = 0; sigma3 in F", "a != 0", [("a", "nonzero")]),
    _e("3.3", 3, Z3, [[1, 0, 0], [0, "a", 0], [0, 0, "b"]], [Zr, Zr, Zr],
       "sigma1, sigma2, sigma3 = 0", "a, b != 0 in F", [("a", "nonzero"), ("b", "nonzero")]),
    _e("3.4", 3, Z3, J1_0, [Zr, Zr, F], "sigma1, sigma2 = 0; sigma3 in F"),
    _e("3.5", 3, Z3, One_J0, [Zr, F, Zr], "sigma1, sigma3 = 0; sigma2 in F"),
    _e("3.6", 3, Z3, [[1, 1, 0], [0, 1, 0], [0, 0, "a"]], [Zr, Zr, Zr],
       "sigma1, sigma2, sigma3 = 0", "a != 0 in F", [("a", "nonzero")]),
    _e("3.7", 3, Z3, [[1, 0, 0], [0, "a", 1], [0, 0, "a"]], [Zr, Zr, Zr],
       "sigma1, sigma2, sigma3 = 0", "a != 0 or 1 in F", [("a", "not_0_1")], priority=-1,
       note="(1)+J2(a) equals (3.6) with parameter 1/a after rescaling; this row is preferred"),
    _e("3.8", 3, Z3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [Zr, Zr, Zr],
       "sigma1, sigma2, sigma3 = 0", priority=-1,
       note="coincides with (3.3) at a = b = 1; this row is preferred"),
    _e("3.9", 3, E12, [[0, -1, "a"], [0, 0, 0], [0, 0, 1]], [F, F, Zr],
       "sigma3 = 0; sigma1, sigma2 in F", "a in F"),
    _e("3.10", 3, E12, [[0, "a", "b"], [0, 0, 0], [0, 0, 1]], [F, Zr, Zr],
       "sigma2, sigma3 = 0; sigma1 in F", "a != -1 in F, b in F", [("a", "ne_minus1")]),
    _e("3.11", 3, E12, [[0, "a", "b"], [0, 0, 0], [0, 1, 1]], [F, Zr, Zr],
       "sigma2, sigma3 = 0; sigma1 in F", "a, b in F"),
    _e("3.12", 3, D100, [[-1, 0, 0], [0, "a", 0], [0, 0, "b"]], [F, Zr, Zr],
       "sigma2, sigma3 = 0; sigma1 in F", "a, b != 0 in F", [("a", "nonzero"), ("b", "nonzero")]),
    _e("3.13", 3, D100, [[-1, 0, 0], [0, "a", 0], [0, 0, 0]], [F, Zr, F],
       "sigma2 = 0; sigma1, sigma3 in F", "a != 0 in F", [("a", "nonzero")]),
    _e("3.14", 3, D100, [[-1, 0, 0], [0, "a", 1], [0, 0, "a"]], [F, Zr, Zr],
       "sigma2, sigma3 = 0; sigma1 in F", "a != 0 in F", [("a", "nonzero")]),
    _e("3.15", 3, D100, [[-1, 0, 0], [0, 0, 1], [0, 0, 0]], [F, F, Zr],
       "sigma3 = 0; sigma1, sigma2 in F"),
    _e("3.16", 3, D100, "-R", [NZ, NZ, NZ], "sigma1, sigma2, sigma3 != 0, sigma2 >= sigma3",
       sigma_order_convention=(1, 2)),
    _e("3.17", 3, D1a0, [[-1, 0, 0], [0, "-a", 0], [0, 0, "b"]], [F, F, Zr],
       "sigma3 = 0; sigma1, sigma2 in F", "a != 0 in F, b != 0 in F",
       [("a", "nonzero"), ("b", "nonzero")]),
    _e("3.18", 3, D1a0, "-R", [NZ, NZ, NZ], "sigma1, sigma2, sigma3 != 0 in F", "a != 0 in F",
       [("a", "nonzero")]),
    _e("3.19", 3, J1_0, [[-1, -1, 0], [0, -1, 0], [0, 0, "a"]], [F, F, Zr],
       "sigma3 = 0; sigma1, sigma2 in F", "a != 0 in F", [("a", "nonzero")]),
    _e("3.20", 3, J1_0, "-R", [NZ, NZ, NZ], "sigma1, sigma2, sigma3 != 0 in F"),
    _e("3.21", 3, One_J0, [[-1, 0, 0], [0, 0, "a"], [0, 0, 0]], [F, F, Zr],
       "sigma3 = 0; sigma1, sigma2 in F", "a != -1 in F", [("a", "ne_minus1")]),
    _e("3.22", 3, One_J0, "-R", [NZ, NZ, NZ], "sigma1, sigma2, sigma3 != 0 in F"),
)

_BY_ID = {e.id: e for e in _ENTRIES}
ENTRY_ORDER = {e.id: i for i, e in enumerate(_ENTRIES)}


def catalog() -> tuple[TableEntry, ...]:
    return _ENTRIES


def get_entry(entry_id: str) -> TableEntry:
    entry_id = str(entry_id).strip("()")
    try:
        return _BY_ID[entry_id]
    except KeyError:
        raise UnknownCase(f"no table entry {entry_id!r}") from None


def sigma_from_params(entry: TableEntry, params: Mapping, pattern=None) -> tuple:
    pattern = entry.sigma_pattern if pattern is None else pattern
    names = entry.sigma_names()
    out = []
    for i, st in enumerate(pattern):
        if st == ZERO_S:
            out.append(ZERO)
        else:
            if names[i] not in params:
                raise MissingParameter(f"entry ({entry.id}) needs parameter {names[i]}")
            out.append(Q(params[names[i]]))
    return tuple(out)


def check_restrictions(entry: TableEntry, params: Mapping, sigma_pattern=None) -> list[str]:
    """Violated restrictions (empty when all hold). The sigma_i >= sigma_j convention is not checked."""
    problems = []
    for p, key in entry.restrictions:
        text, pred = RESTRICTIONS[key]
        if not pred(Q(params[p])):
            problems.append(f"{p} {text}")
    pattern = entry.sigma_pattern if sigma_pattern is None else sigma_pattern
    sig = sigma_from_params(entry, params, pattern)
    names = entry.sigma_names()
    for i, st in enumerate(pattern):
        if st == NONZERO_S and sig[i] == 0:
            problems.append(f"{names[i]} != 0")
    if entry.not_all_zero and all(x == 0 for x in sig):
        problems.append("sigma not all zero")
    return problems


def instantiate(entry: TableEntry, params: Mapping | None = None, sigma_pattern=None) -> ExtensionSpec:
    """Concrete spec for a table row; no Leibniz validity is implied.

    ``sigma_pattern`` overrides the printed sigma statuses (used with audited domains).
    """
    params = dict(params or {})
    missing = [p for p in entry.matrix_params if p not in params]
    if missing:
        raise MissingParameter(f"entry ({entry.id}) needs parameters {missing}")
    params = {k: Q(v) for k, v in params.items()}
    problems = check_restrictions(entry, params, sigma_pattern)
    if problems:
        raise RestrictionViolated(f"entry ({entry.id}): " + "; ".join(problems))
    return ExtensionSpec.single(entry.R(params), entry.L(params), sigma_from_params(entry, params, sigma_pattern))
