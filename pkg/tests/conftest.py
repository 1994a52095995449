import numpy as np
from hypothesis import strategies as st

from wscodes import CodeMatrix


@st.composite
def matrices(draw, min_l=1, max_l=10, min_n=0, max_n=6):
    l = draw(st.integers(min_l, max_l))
    n = draw(st.integers(min_n, max_n))
    cols = draw(st.lists(st.integers(0, 2**l - 1), min_size=n, max_size=n))
    return CodeMatrix(l, cols)


def random_matrix(rng: np.random.Generator, l: int, n: int, p: float) -> CodeMatrix:
    bits = rng.random((l, n)) < p
    cols = [sum(int(bits[i, j]) << i for i in range(l)) for j in range(n)]
    return CodeMatrix(l, cols)


def column_strings(m: CodeMatrix) -> list[str]:
    return [m.column_string(j) for j in m.live_indices()]
