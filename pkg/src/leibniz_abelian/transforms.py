"""Equivalence transformations of extension data.

* basis change of the nilradical: N -> S N
* shift of the extension: x_a -> x_a + mu^a_j n_j
* recombination of the extension: X -> G X
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, SingularMatrix
from .exact_linalg import ZERO, Matrix, mat, vec
from .extension import ExtensionSpec

SAMPLE_POOL = tuple(Fraction(x) for x in ("-2", "-1", "-1/2", "1/2", "1", "2"))


@dataclass(frozen=True)
class TransformStep:
    kind: str  # "basis_change" | "shift" | "recombination"
    payload: object  # Matrix for basis_change/recombination, tuple of vectors for shift

    def apply(self, spec: ExtensionSpec) -> ExtensionSpec:
        if self.kind == "basis_change":
            return apply_basis_change(spec, self.payload)
        if self.kind == "shift":
            return apply_shift(spec, self.payload)
        if self.kind == "recombination":
            return apply_recombination(spec, self.payload)
        raise ValueError(f"unknown transform kind {self.kind!r}")

    def to_json(self):
        if self.kind == "shift":
            data = [[str(x) for x in v] for v in self.payload]
        else:
            data = [[str(x) for x in self.payload.row(i)] for i in range(self.payload.rows)]
        return {"kind": self.kind, "payload": data}

    @classmethod
    def from_json(cls, d) -> "TransformStep":
        if d["kind"] == "shift":
            return cls("shift", tuple(vec(v) for v in d["payload"]))
        return cls(d["kind"], mat(d["payload"]))


def apply_trail(spec: ExtensionSpec, trail: Sequence[TransformStep]) -> ExtensionSpec:
    for step in trail:
        spec = step.apply(spec)
    return spec


def apply_basis_change(spec: ExtensionSpec, S) -> ExtensionSpec:
    S = mat(S)
    if S.shape != (spec.r, spec.r):
        raise DimensionMismatch(f"basis change must be {spec.r}x{spec.r}")
    S_inv = S.inverse()
    S_invT = S_inv.T
    return ExtensionSpec(
        spec.r,
        spec.s,
        tuple(S @ m @ S_inv for m in spec.L),
        tuple(S @ m @ S_inv for m in spec.R),
        {k: S_invT @ v for k, v in spec.sigma.items()},
    )


def apply_shift(spec: ExtensionSpec, mu) -> ExtensionSpec:
    """sigma^ab_k -> sigma^ab_k + mu^a_j R^b_jk + mu^b_j L^a_jk."""
    mu = [vec(v) for v in mu]
    if len(mu) != spec.s or any(len(v) != spec.r for v in mu):
        raise DimensionMismatch(f"need {spec.s} shift vectors of length {spec.r}")
    r = spec.r
    sigma = {}
    for (a, b), v in spec.sigma.items():
        Rb, La = spec.R[b], spec.L[a]
        sigma[(a, b)] = tuple(
            v[k] + sum((mu[a][j] * Rb[j, k] + mu[b][j] * La[j, k] for j in range(r)), ZERO)
            for k in range(r)
        )
    return ExtensionSpec(spec.r, spec.s, spec.L, spec.R, sigma)


def apply_recombination(spec: ExtensionSpec, G) -> ExtensionSpec:
    """x'_a = sum_b G_ab x_b; sigma transforms bilinearly."""
    if not isinstance(G, Matrix):
        G = Matrix.diag([G]) if not isinstance(G, (list, tuple)) else mat(G)
    s, r = spec.s, spec.r
    if G.shape != (s, s):
        raise DimensionMismatch(f"recombination must be {s}x{s}")
    if G.det() == 0:
        raise SingularMatrix("recombination matrix must be invertible")
    L = tuple(_combine([G[a, b] for b in range(s)], spec.L, r) for a in range(s))
    R = tuple(_combine([G[a, b] for b in range(s)], spec.R, r) for a in range(s))
    sigma = {}
    for a in range(s):
        for b in range(s):
            acc = [ZERO] * r
            for c in range(s):
                for d in range(s):
                    f = G[a, c] * G[b, d]
                    if f:
                        for k, x in enumerate(spec.sigma[(c, d)]):
                            acc[k] += f * x
            sigma[(a, b)] = tuple(acc)
    return ExtensionSpec(r, s, L, R, sigma)


def _combine(coeffs, mats, r) -> Matrix:
    out = Matrix.zeros(r)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + m.scale(c)
    return out


def step_basis_matrix(spec: ExtensionSpec, step: TransformStep) -> Matrix:
    """New algebra basis (rows, in old coordinates) realised by ``step`` on ``spec``."""
    r, s = spec.r, spec.s
    n = r + s
    rows = [[ZERO] * n for _ in range(n)]
    if step.kind == "basis_change":
        S = step.payload
        for i in range(r):
            for j in range(r):
                rows[i][j] = S[i, j]
        for a in range(s):
            rows[r + a][r + a] = Fraction(1)
    elif step.kind == "shift":
        for i in range(r):
            rows[i][i] = Fraction(1)
        for a in range(s):
            rows[r + a][r + a] = Fraction(1)
            for j in range(r):
                rows[r + a][j] = step.payload[a][j]
    else:
        G = step.payload
        for i in range(r):
            rows[i][i] = Fraction(1)
        for a in range(s):
            for b in range(s):
                rows[r + a][r + b] = G[a, b]
    return Matrix.from_rows(rows)


def _random_invertible(rng: random.Random, k: int) -> Matrix:
    while True:
        m = Matrix.from_rows([[rng.choice(SAMPLE_POOL) for _ in range(k)] for _ in range(k)])
        if m.det() != 0:
            return m


def random_step(rng: random.Random, spec: ExtensionSpec) -> TransformStep:
    kind = rng.choice(("basis_change", "shift", "recombination"))
    if kind == "basis_change":
        return TransformStep(kind, _random_invertible(rng, spec.r))
    if kind == "shift":
        return TransformStep(
            kind, tuple(tuple(rng.choice(SAMPLE_POOL) for _ in range(spec.r)) for _ in range(spec.s))
        )
    return TransformStep(kind, _random_invertible(rng, spec.s))


def random_orbit_sample(spec: ExtensionSpec, seed, steps: int = 3):
    """Apply ``steps`` random transformations; deterministic in ``seed``."""
    rng = random.Random(seed)
    trail = []
    for _ in range(steps):
        step = random_step(rng, spec)
        spec = step.apply(spec)
        trail.append(step)
    return spec, trail
