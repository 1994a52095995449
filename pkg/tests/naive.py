"""Brute-force reference implementations used as test oracles.

Everything here works on a plain list-of-rows representation (rows[i][j]
is the bit of codeword j at coordinate i) and counts by materializing
each submatrix directly.  Deliberately independent of the packed-int
kernels in the package, and kept as slow-but-obvious as possible.
"""

from itertools import combinations


def rows_from_columns(columns, length=None):
    """Build the row-major bit table from column strings like "110".

    Character k of a column string is the bit at coordinate k.
    """
    if not columns:
        if length is None:
            raise ValueError("need explicit length for an empty matrix")
        return [[] for _ in range(length)]
    l = len(columns[0])
    if any(len(c) != l for c in columns):
        raise ValueError("mixed column lengths")
    return [[int(c[i]) for c in columns] for i in range(l)]


def weight_one_rows(rows, subset):
    """Number of coordinates where exactly one selected column is 1."""
    return sum(1 for row in rows if sum(row[j] for j in subset) == 1)


def naive_is_violated(rows, subset, d):
    return weight_one_rows(rows, subset) <= d - 1


def naive_violations(rows, t, d):
    """All violated subsets in canonical order (size ascending, lex)."""
    n = len(rows[0]) if rows else 0
    out = []
    for s in range(2, min(t, n) + 1):
        for subset in combinations(range(n), s):
            if naive_is_violated(rows, subset, d):
                out.append(subset)
    return out


def naive_verify_weak(rows, t, d):
    return not naive_violations(rows, t, d)


def naive_min_distance(rows):
    n = len(rows[0])
    if n < 2:
        raise ValueError("need at least two columns")
    return min(
        sum(1 for row in rows if row[i] != row[j])
        for i, j in combinations(range(n), 2)
    )


def naive_locally_thin(rows, u):
    n = len(rows[0]) if rows else 0
    for subset in combinations(range(n), u):
        if weight_one_rows(rows, subset) == 0:
            return False
    return True


def naive_cff(rows, w, r, d):
    """Direct check of the (w,r;d) cover-free condition on all disjoint pairs."""
    n = len(rows[0]) if rows else 0
    supports = [
        {i for i, row in enumerate(rows) if row[j] == 1} for j in range(n)
    ]
    for xs in combinations(range(n), w):
        inter = set.intersection(*(supports[j] for j in xs))
        rest = [j for j in range(n) if j not in xs]
        for ys in combinations(rest, r):
            union = set().union(*(supports[j] for j in ys))
            if len(inter - union) < d:
                return False
    return True


def naive_max_code(l, t, d):
    """Exhaustive maximum weak (t,d) code over all subsets of F_2^l.

    Only usable for tiny l; enumerates every subset of the 2^l vectors.
    """
    vectors = [format(v, f"0{l}b")[::-1] for v in range(2 ** l)]
    best, witness = 0, []
    for mask in range(1, 2 ** len(vectors)):
        chosen = [vectors[i] for i in range(len(vectors)) if mask >> i & 1]
        if len(chosen) <= best:
            continue
        if naive_verify_weak(rows_from_columns(chosen), t, d):
            best, witness = len(chosen), chosen
    return best, witness
