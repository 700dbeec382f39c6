"""Cheap isomorphism invariants; unequal fingerprints certify non-isomorphism."""

from __future__ import annotations

from typing import NamedTuple

from ..algebra import LeibnizAlgebra, is_lie, left_annihilator, series


class Fingerprint(NamedTuple):
    dim: int
    derived: tuple
    lower_central: tuple
    left_annihilator: int
    lie: bool

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "derived": list(self.derived),
            "lower_central": list(self.lower_central),
            "left_annihilator": self.left_annihilator,
            "is_lie": self.lie,
        }


def invariant_fingerprint(alg: LeibnizAlgebra) -> Fingerprint:
    return Fingerprint(
        alg.dim,
        series(alg, "derived").dims,
        series(alg, "lower_central").dims,
        left_annihilator(alg).dim,
        is_lie(alg),
    )


def compare(a: LeibnizAlgebra, b: LeibnizAlgebra) -> str:
    """'non_isomorphic' when fingerprints differ, otherwise 'inconclusive'."""
    return "non_isomorphic" if invariant_fingerprint(a) != invariant_fingerprint(b) else "inconclusive"
