import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from leibniz_abelian.exact_linalg import Matrix, jordan_matrix

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("default")

SMALL = [Fraction(v) for v in (-2, -1, 0, 1, 2)] + [Fraction(1, 2), Fraction(-3, 2)]


def small_rationals():
    return st.sampled_from(SMALL)


@st.composite
def matrices(draw, n=None, max_n=4, elements=None):
    n = n if n is not None else draw(st.integers(1, max_n))
    if elements is None:
        elements = st.integers(-2, 2).map(Fraction)
    return Matrix.from_rows([[draw(elements) for _ in range(n)] for _ in range(n)])


@st.composite
def invertible_matrices(draw, n):
    """Lower times upper unitriangular, so the determinant is 1."""
    ints = st.integers(-2, 2).map(Fraction)
    lo = [[Fraction(int(i == j)) if j >= i else draw(ints) for j in range(n)] for i in range(n)]
    up = [[Fraction(int(i == j)) if j <= i else draw(ints) for j in range(n)] for i in range(n)]
    return Matrix.from_rows(lo) @ Matrix.from_rows(up)


@st.composite
def split_matrices(draw, max_n=4):
    """Random conjugate of a random rational Jordan matrix, with its block list."""
    n = draw(st.integers(1, max_n))
    sizes = []
    left = n
    while left:
        k = draw(st.integers(1, left))
        sizes.append(k)
        left -= k
    blocks = [(draw(st.integers(-2, 2).map(Fraction)), k) for k in sizes]
    P = draw(invertible_matrices(n))
    return P.inverse() @ jordan_matrix(blocks) @ P, blocks


def random_rational_matrix(rng: random.Random, n: int, lo=-2, hi=2) -> Matrix:
    return Matrix.from_rows([[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)])


@pytest.fixture
def rng():
    return random.Random(12345)
