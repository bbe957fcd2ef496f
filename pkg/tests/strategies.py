"""Hypothesis strategies for exact rationals, vectors and matrices."""

from fractions import Fraction

from hypothesis import strategies as st

from src.exact.matrix import to_matrix, to_vector

small_ints = st.integers(min_value=-6, max_value=6)

rationals = st.builds(
    Fraction,
    small_ints,
    st.integers(min_value=1, max_value=5),
)

signs = st.sampled_from([1, -1])


def sign_lists(length: int):
    return st.lists(signs, min_size=length, max_size=length)


def vectors(dim: int):
    return st.lists(rationals, min_size=dim, max_size=dim).map(to_vector)


def matrices(rows: int, cols: int):
    return st.lists(
        st.lists(rationals, min_size=cols, max_size=cols), min_size=rows, max_size=rows
    ).map(lambda r: to_matrix(r, cols))


@st.composite
def square_matrices(draw, max_dim: int = 4):
    d = draw(st.integers(min_value=1, max_value=max_dim))
    return draw(matrices(d, d))


@st.composite
def skew_matrices(draw, dim: int):
    entries = draw(st.lists(small_ints, min_size=dim * dim, max_size=dim * dim))
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            rows[i][j] = Fraction(entries[i * dim + j])
            rows[j][i] = -rows[i][j]
    return to_matrix(rows)
