import io
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from wscodes import CodeMatrix, ParseError, dumps_wsc, loads_wsc

from conftest import matrices


def test_from_columns_identity():
    m = CodeMatrix.from_columns(["100", "010", "001"])
    assert m.length == 3 and m.n == 3
    assert [m.column_string(j) for j in range(3)] == ["100", "010", "001"]


def test_from_columns_empty_with_length():
    m = CodeMatrix.from_columns([], length=4)
    assert m.length == 4 and m.n == 0


def test_from_columns_supports():
    m = CodeMatrix.from_columns(["110", "011"])
    assert m.support(0) == {0, 1}
    assert m.support(1) == {1, 2}


def test_from_columns_mixed_lengths():
    with pytest.raises(ValueError, match="mixed"):
        CodeMatrix.from_columns(["10", "011"])


def test_from_columns_zero_length():
    with pytest.raises(ValueError):
        CodeMatrix.from_columns([], length=0)
    with pytest.raises(ValueError):
        CodeMatrix.from_columns([""])


def test_from_columns_bit_sequences():
    m = CodeMatrix.from_columns([[1, 1, 0], [0, 1, 1]])
    assert m.column_string(0) == "110"
    with pytest.raises(ValueError):
        CodeMatrix.from_columns([[0, 2, 1]])


def test_support_unit_and_zero():
    m = CodeMatrix.from_columns(["010", "000"])
    assert m.support(0) == {1}
    assert m.support(1) == set()
    assert m.weight(0) == 1 and m.weight(1) == 0


def test_support_out_of_range():
    m = CodeMatrix.from_columns(["10", "01"])
    with pytest.raises(IndexError):
        m.support(2)


def test_weight_one_row_count_examples():
    m = CodeMatrix.from_columns(["100", "010", "001"])
    assert m.weight_one_row_count([0, 1]) == 2
    m = CodeMatrix.from_columns(["110", "011"])
    assert m.weight_one_row_count([0, 1]) == 2  # rows 0 and 2
    m = CodeMatrix.from_columns(["101", "101"])
    assert m.weight_one_row_count([0, 1]) == 0


def test_weight_one_row_count_usage_errors():
    m = CodeMatrix.from_columns(["10", "01"])
    with pytest.raises(ValueError):
        m.weight_one_row_count([])
    with pytest.raises(ValueError):
        m.weight_one_row_count([0, 5])
    m.remove_column(1)
    with pytest.raises(ValueError):
        m.weight_one_row_count([0, 1])


def test_hamming_distance_examples():
    m = CodeMatrix.from_columns(["000", "011", "110"])
    assert m.hamming_distance(0, 1) == 2
    assert m.hamming_distance(2, 1) == 2
    m2 = CodeMatrix.from_columns(["101", "101"])
    assert m2.hamming_distance(0, 1) == 0


def test_hamming_distance_same_column():
    m = CodeMatrix.from_columns(["10", "01"])
    with pytest.raises(ValueError):
        m.hamming_distance(1, 1)


def test_remove_column():
    m = CodeMatrix.from_columns(["100", "010", "001"])
    m.remove_column(1)
    assert m.live_indices() == (0, 2)
    assert m.live_count == 2
    # bits of survivors untouched
    assert m.weight_one_row_count([0, 2]) == 2
    with pytest.raises(ValueError):
        m.remove_column(1)
    m.remove_column(0)
    m.remove_column(2)
    assert m.live_indices() == ()


def test_compact_preserves_order():
    m = CodeMatrix.from_columns(["100", "010", "001", "111"])
    m.remove_column(1)
    c = m.compact()
    assert c.n == 3 and c.live_count == 3
    assert [c.column_string(j) for j in range(3)] == ["100", "001", "111"]


def test_column_bits_validated():
    with pytest.raises(ValueError):
        CodeMatrix(2, [4])  # bit beyond length
    with pytest.raises(ValueError):
        CodeMatrix(2, [-1])


@given(matrices(max_l=8, max_n=5))
def test_pairwise_count_is_hamming_distance(m):
    live = m.live_indices()
    for i in range(len(live)):
        for j in range(i + 1, len(live)):
            assert m.weight_one_row_count([live[i], live[j]]) == m.hamming_distance(
                live[i], live[j]
            )


@given(matrices(min_n=2, max_l=6, max_n=4), st.randoms(use_true_random=False))
def test_count_invariant_under_permutations(m, rnd):
    subset = list(m.live_indices())
    base = m.weight_one_row_count(subset)
    shuffled = list(subset)
    rnd.shuffle(shuffled)
    assert m.weight_one_row_count(shuffled) == base
    # permuting coordinates of the whole matrix keeps the count
    perm = list(range(m.length))
    rnd.shuffle(perm)
    permuted_cols = []
    for j in range(m.n):
        bits = m.column(j)
        permuted_cols.append(
            sum(((bits >> i) & 1) << perm[i] for i in range(m.length))
        )
    pm = CodeMatrix(m.length, permuted_cols)
    assert pm.weight_one_row_count(subset) == base


def test_unit_vector_subsets_count_their_size():
    for l in range(2, 6):
        cols = ["0" * i + "1" + "0" * (l - 1 - i) for i in range(l)]
        m = CodeMatrix.from_columns(cols)
        for s in range(2, l + 1):
            assert m.weight_one_row_count(range(s)) == s


def test_wsc_write_format():
    m = CodeMatrix.from_columns(["100", "010", "001"])
    assert dumps_wsc(m, 2, 1) == "3 3 2 1\n100\n010\n001\n"


def test_wsc_write_skips_dead_columns():
    m = CodeMatrix.from_columns(["10", "01", "11"])
    m.remove_column(1)
    assert dumps_wsc(m, 2, 1) == "2 2 2 1\n11\n01\n"


def test_wsc_empty_matrix_roundtrip():
    m = CodeMatrix.from_columns([], length=3)
    text = dumps_wsc(m, 2, 1)
    assert text == "3 0 2 1\n\n\n\n"
    back, t, d = loads_wsc(text)
    assert back.length == 3 and back.n == 0 and (t, d) == (2, 1)


@given(matrices(max_l=12, max_n=8), st.integers(2, 5), st.integers(1, 4))
def test_wsc_roundtrip_bit_exact(m, t, d):
    back, t2, d2 = loads_wsc(dumps_wsc(m, t, d))
    assert (t2, d2) == (t, d)
    assert back.length == m.length
    assert [back.column(j) for j in range(back.n)] == [
        m.column(j) for j in m.live_indices()
    ]


@pytest.mark.parametrize(
    "text",
    [
        "3 1 2 1\n100",  # missing trailing newline
        "3 1 2 1\n10\n01\n00\n",  # wrong row width
        "2 2 2 1\n10\n",  # missing row
        "2 1 2 1\nx\n0\n",  # bad character
        "2 1 2\n10\n01\n",  # short header
        "a 1 2 1\n10\n01\n",  # non-integer header
        "0 1 2 1\n",  # zero length
        "2 1 1 1\n10\n01\n",  # t below 2
        "",  # empty
    ],
)
def test_wsc_parse_errors(text):
    with pytest.raises(ParseError):
        loads_wsc(text)


def test_read_wsc_stream():
    from wscodes import read_wsc

    m, t, d = read_wsc(io.StringIO("2 2 3 2\n10\n01\n"))
    assert m.column_string(0) == "10" and (t, d) == (3, 2)
