"""Certificates that certain R admit no permissible extension."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ..errors import UnknownCase
from ..exact_linalg import (
    ZERO,
    Matrix,
    Q,
    commutator,
    in_span,
    is_nilpotent_matrix,
    jordan_block,
    nilindependent_matrices,
    solve_linear_matrix,
)

CASES = ("r2_jordan_nilpotent", "r3_full_nilpotent", "l22_nondiagonal")
PARAM_NAMES = "abcdefgh"


def _family_text(part: Matrix, basis: list[Matrix], names) -> str:
    rows = []
    for i in range(part.rows):
        cells = []
        for j in range(part.cols):
            terms = []
            if part[i, j] or not any(B[i, j] for B in basis):
                terms.append(str(part[i, j]))
            for name, B in zip(names, basis):
                c = B[i, j]
                if c:
                    terms.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}*{name}")
            text = " + ".join(terms).replace("+ -", "- ")
            if len(terms) > 1 and terms[0] == "0":
                text = " + ".join(terms[1:])
            cells.append(text)
        rows.append("[" + ", ".join(cells) + "]")
    return "[" + ", ".join(rows) + "]"


@dataclass(frozen=True)
class EmptinessCertificate:
    case_id: str
    R: Matrix
    solved_L_family: str
    reason: str  # all_combinations_nilpotent | nilindependence_impossible
    unknowns: tuple  # names of the solved matrices
    particular: tuple  # one matrix per unknown
    basis: tuple  # per parameter: one matrix per unknown
    params: tuple
    eigenvalue: Fraction | None = None

    def instance(self, values: Mapping) -> dict:
        out = {}
        for k, name in enumerate(self.unknowns):
            M = self.particular[k]
            for p, B in zip(self.params, self.basis):
                v = Q(values[p])
                if v:
                    M = M + B[k].scale(v)
            out[name] = M
        return out

    def check(self, values: Mapping) -> tuple[bool, str]:
        """Re-verify constraints and the stated failure at one parameter point."""
        m = self.instance(values)
        if self.case_id == "l22_nondiagonal":
            R1, L1, R2, L2 = self.R, m["L1"], m["R2"], m["L2"]
            Ls, Rs = (L1, L2), (R1, R2)
            for a, b in itertools.product(range(2), repeat=2):
                if not commutator(Ls[a], Ls[b]).is_zero():
                    return False, f"[L{a + 1}, L{b + 1}] != 0"
                if not commutator(Ls[a], Rs[b]).is_zero():
                    return False, f"[L{a + 1}, R{b + 1}] != 0"
                if not ((Rs[a] + Ls[a]) @ Rs[b]).is_zero():
                    return False, f"(R{a + 1} + L{a + 1}) R{b + 1} != 0"
            X1 = Matrix.block_diag([L1, R1])
            X2 = Matrix.block_diag([L2, R2])
            res = nilindependent_matrices([X1, X2])
            if res.independent:
                return False, "pair is nilindependent"
            lam = self.eigenvalue
            combo = R1.scale(R2[0, 0]) - R2.scale(lam)
            if any(combo[i, j] for i in range(2) for j in range(i + 1)):
                return False, "R11 R1 - lambda R2 is not strictly upper triangular"
            return True, f"nilpotent combination {res.witness}"
        R, L = self.R, m["L"]
        if not commutator(L, R).is_zero():
            return False, "[L, R] != 0"
        if not ((R + L) @ R).is_zero():
            return False, "(R + L) R != 0"
        for M in (R, L):
            if any(M[i, j] for i in range(M.rows) for j in range(i + 1)):
                return False, "solution is not strictly upper triangular"
        if not (is_nilpotent_matrix(L) and is_nilpotent_matrix(R)):
            return False, "L or R not nilpotent"
        return True, "L and R strictly upper triangular, so x is nilpotent"

    def recheck(self, grid=(-2, -1, 0, Fraction(1, 2), 1, 3)) -> bool:
        return all(self.check(dict(zip(self.params, v)))[0]
                   for v in itertools.product(grid, repeat=len(self.params)))

    def to_json(self) -> dict:
        return {
            "case": self.case_id,
            "R": [[str(x) for x in self.R.row(i)] for i in range(self.R.rows)],
            "solved_L_family": self.solved_L_family,
            "reason": self.reason,
            "params": list(self.params),
            "particular": {n: [[str(x) for x in M.row(i)] for i in range(M.rows)]
                           for n, M in zip(self.unknowns, self.particular)},
            "basis": [{n: [[str(x) for x in M.row(i)] for i in range(M.rows)]
                       for n, M in zip(self.unknowns, B)} for B in self.basis],
        }


def _single(case_id: str, R: Matrix) -> EmptinessCertificate:
    r = R.rows
    sol = solve_linear_matrix(lambda L: [commutator(L, R), (R + L) @ R], r)
    part, kern = sol
    names = PARAM_NAMES[: len(kern)]
    return EmptinessCertificate(
        case_id=case_id,
        R=R,
        solved_L_family="L = " + _family_text(part, kern, names),
        reason="all_combinations_nilpotent",
        unknowns=("L",),
        particular=(part,),
        basis=tuple((B,) for B in kern),
        params=tuple(names),
    )


def _l22(lam) -> EmptinessCertificate:
    lam = Q(lam)
    R1 = jordan_block(lam, 2)
    # (R1 + L1) R1 = 0 with R1 invertible fixes L1
    L1, k1 = solve_linear_matrix(lambda L: [(R1 + L) @ R1], 2)
    assert not k1
    # [L1, R2] = 0 gives the commutant of R1
    R2p, R2k = solve_linear_matrix(lambda X: [commutator(L1, X)], 2)
    # (R2 + L2) R1 = 0 fixes L2 = -R2
    names = ("p", "q")
    # order the commutant basis as p * I + q * E12
    basis_R2 = [Matrix.identity(2), Matrix.unit(2, 0, 1)]
    if not (R2p.is_zero() and len(R2k) == 2
            and all(in_span(K.entries, [B.entries for B in basis_R2]) for K in R2k)):
        raise AssertionError("commutant of R1 is not span{I, E12}")
    basis = tuple((Matrix.zeros(2), B, -B) for B in basis_R2)
    return EmptinessCertificate(
        case_id="l22_nondiagonal",
        R=R1,
        solved_L_family="L1 = -R1, R2 = [[p, q], [0, p]], L2 = -R2",
        reason="nilindependence_impossible",
        unknowns=("L1", "R2", "L2"),
        particular=(L1, Matrix.zeros(2), Matrix.zeros(2)),
        basis=basis,
        params=names,
        eigenvalue=lam,
    )


def verify_empty_case(case_id: str, lam=1) -> EmptinessCertificate:
    if case_id == "r2_jordan_nilpotent":
        cert = _single(case_id, jordan_block(ZERO, 2))
    elif case_id == "r3_full_nilpotent":
        cert = _single(case_id, jordan_block(ZERO, 3))
    elif case_id == "l22_nondiagonal":
        if Q(lam) == 0:
            raise ValueError("lambda must be nonzero")
        cert = _l22(lam)
    else:
        raise UnknownCase(f"unknown case {case_id!r}; expected one of {CASES}")
    if not cert.recheck():
        raise AssertionError(f"certificate for {case_id} failed its own re-check")
    return cert
