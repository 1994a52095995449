"""Exact verifiers: weak superimposed, locally thin, and cover-free checks.

The subset scan is the O(n^t) hot path.  ``iter_violated_subsets`` walks
all column subsets of the requested sizes in canonical order (size
ascending, then lexicographic on index tuples) and yields the violated
ones.  Sizes 2..4 get hand-unrolled nested loops that share the
ones/twos accumulators across prefixes; larger sizes use a recursive
fallback with the same sharing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .matrix import CodeMatrix


@dataclass(frozen=True)
class ViolationReport:
    """One violated column subset and its weight-1-row count."""

    subset: tuple[int, ...]
    weight_one_rows: int
    kind: str = "weak"

    def to_dict(self) -> dict:
        return {
            "subset": list(self.subset),
            "weight_one_rows": self.weight_one_rows,
            "kind": self.kind,
        }


@dataclass
class VerificationResult:
    ok: bool
    violations: list[ViolationReport]
    subsets_checked: int
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "params": dict(self.params),
            "subsets_checked": self.subsets_checked,
            "violations": [v.to_dict() for v in self.violations],
        }


def _scan_pairs(cols: Sequence[int], d: int) -> Iterator[tuple[tuple[int, ...], int]]:
    # exactly-one over two columns is just XOR
    n = len(cols)
    for i in range(n - 1):
        a = cols[i]
        for j in range(i + 1, n):
            c = (a ^ cols[j]).bit_count()
            if c < d:
                yield (i, j), c


def _scan_triples(cols: Sequence[int], d: int) -> Iterator[tuple[tuple[int, ...], int]]:
    n = len(cols)
    for i in range(n - 2):
        a = cols[i]
        for j in range(i + 1, n - 1):
            b = cols[j]
            ones2 = a ^ b
            twos2 = a & b
            for k in range(j + 1, n):
                w = cols[k]
                c = ((ones2 ^ w) & ~(twos2 | (ones2 & w))).bit_count()
                if c < d:
                    yield (i, j, k), c


def _scan_quads(cols: Sequence[int], d: int) -> Iterator[tuple[tuple[int, ...], int]]:
    n = len(cols)
    for i in range(n - 3):
        a = cols[i]
        for j in range(i + 1, n - 2):
            b = cols[j]
            ones2 = a ^ b
            twos2 = a & b
            for k in range(j + 1, n - 1):
                w = cols[k]
                ones3 = ones2 ^ w
                twos3 = twos2 | (ones2 & w)
                for m in range(k + 1, n):
                    w4 = cols[m]
                    c = ((ones3 ^ w4) & ~(twos3 | (ones3 & w4))).bit_count()
                    if c < d:
                        yield (i, j, k, m), c


def _scan_general(
    cols: Sequence[int], d: int, s: int
) -> Iterator[tuple[tuple[int, ...], int]]:
    n = len(cols)
    prefix = [0] * s

    def rec(depth: int, start: int, ones: int, twos: int):
        remaining = s - depth
        for i in range(start, n - remaining + 1):
            w = cols[i]
            o = ones ^ w
            tw = twos | (ones & w)
            prefix[depth] = i
            if remaining == 1:
                c = (o & ~tw).bit_count()
                if c < d:
                    yield tuple(prefix), c
            else:
                yield from rec(depth + 1, i + 1, o, tw)

    yield from rec(0, 0, 0, 0)


def iter_violated_subsets(
    cols: Sequence[int], d: int, sizes
) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (positions, weight_one_rows) for every violated subset.

    Positions index into ``cols``.  A subset is violated when it has at
    most d-1 rows of weight exactly 1.  Canonical order: size ascending,
    lexicographic within each size.
    """
    n = len(cols)
    for s in sizes:
        if s < 2 or s > n:
            continue
        if s == 2:
            yield from _scan_pairs(cols, d)
        elif s == 3:
            yield from _scan_triples(cols, d)
        elif s == 4:
            yield from _scan_quads(cols, d)
        else:
            yield from _scan_general(cols, d, s)


def _lex_rank(positions: tuple[int, ...], n: int) -> int:
    """Rank of a combination in the lexicographic order over range(n)."""
    s = len(positions)
    rank = 0
    prev = -1
    for i, c in enumerate(positions):
        for v in range(prev + 1, c):
            rank += comb(n - 1 - v, s - 1 - i)
        prev = c
    return rank


def is_violated(m: CodeMatrix, subset, d: int) -> bool:
    """True iff the subset has at most d-1 coordinates of weight exactly 1."""
    subset = tuple(subset)
    if len(subset) < 2:
        raise ValueError("a violated set has at least 2 codewords")
    if d < 1:
        raise ValueError("d must be >= 1")
    return m.weight_one_row_count(subset) <= d - 1


def verify_weak(
    m: CodeMatrix, t: int, d: int, cap: int | None = 1000
) -> VerificationResult:
    """Check the weak (t,d) condition over all live-column subsets.

    ``cap`` bounds the number of collected violation reports (None for
    unlimited); ok/not-ok is decided by the first violation either way.
    Matrices with at most one live column pass vacuously.
    """
    if t < 2:
        raise ValueError("strength t must be >= 2")
    if d < 1:
        raise ValueError("d must be >= 1")
    if cap is not None and cap < 1:
        raise ValueError("cap must be >= 1 or None")
    live = m.live_indices()
    cols = [m.column(j) for j in live]
    nlive = len(cols)
    sizes = range(2, min(t, nlive) + 1)
    params = {"t": t, "d": d, "kind": "weak"}
    violations: list[ViolationReport] = []
    truncated_at = None
    for positions, w1 in iter_violated_subsets(cols, d, sizes):
        violations.append(
            ViolationReport(tuple(live[p] for p in positions), w1, "weak")
        )
        if cap is not None and len(violations) >= cap:
            s = len(positions)
            before = sum(comb(nlive, k) for k in sizes if k < s)
            truncated_at = before + _lex_rank(positions, nlive) + 1
            break
    if truncated_at is None:
        checked = sum(comb(nlive, s) for s in sizes)
    else:
        checked = truncated_at
    return VerificationResult(not violations, violations, checked, params)


def count_weak_violations(m: CodeMatrix, t: int, d: int) -> int:
    """Exact number of violated subsets among the live columns."""
    live = m.live_indices()
    cols = [m.column(j) for j in live]
    sizes = range(2, min(t, len(cols)) + 1)
    return sum(1 for _ in iter_violated_subsets(cols, d, sizes))


def min_distance(m: CodeMatrix) -> int:
    """Minimum pairwise Hamming distance over live columns (needs >= 2)."""
    live = m.live_indices()
    if len(live) < 2:
        raise ValueError("min_distance needs at least two live columns")
    cols = [m.column(j) for j in live]
    return min(
        (a ^ b).bit_count() for a, b in combinations(cols, 2)
    )


def verify_locally_thin(m: CodeMatrix, u: int) -> bool:
    """True iff every u-subset of live columns has a weight-1 row.

    Vacuously true when fewer than u columns are live.
    """
    if u < 2:
        raise ValueError("u must be >= 2")
    live = m.live_indices()
    if len(live) < u:
        return True
    cols = [m.column(j) for j in live]
    # a u-subset with zero weight-1 rows is exactly a (u,1)-violated set
    return next(iter_violated_subsets(cols, 1, (u,)), None) is None


def iter_cff_violations(
    cols: Sequence[int], w: int, r: int, d: int
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield violated cover-free structures (X positions, Y positions).

    A pair of disjoint column sets with |X| = w and |Y| = r is violated
    when fewer than d coordinates are 1 in all of X and 0 in all of Y.
    X runs lexicographically, then Y lexicographically over the rest.
    """
    n = len(cols)
    if n < w + r:
        return
    for xs in combinations(range(n), w):
        inter = cols[xs[0]]
        for p in xs[1:]:
            inter &= cols[p]
        rest = [p for p in range(n) if p not in xs]
        if inter.bit_count() < d:
            # no Y can recover coordinates; every disjoint Y is violated
            for ys in combinations(rest, r):
                yield xs, ys
            continue
        for ys in combinations(rest, r):
            union = 0
            for p in ys:
                union |= cols[p]
            if (inter & ~union).bit_count() < d:
                yield xs, ys


def cff_verify(m: CodeMatrix, w: int, r: int, d: int) -> bool:
    """Check the (w,r;d) cover-free condition over live columns.

    Vacuously true when fewer than w+r columns are live.
    """
    if w < 1 or r < 1 or d < 1:
        raise ValueError("w, r, d must all be >= 1")
    cols = [m.column(j) for j in m.live_indices()]
    return next(iter_cff_violations(cols, w, r, d), None) is None


def weak_from_cff_check(m: CodeMatrix, r: int) -> bool:
    """Cross-check that a (1,r;1) cover-free family is a weak (r,1) code.

    Returns the conjunction of both verifier outcomes; a matrix passing
    the cover-free check but failing the weak check would contradict the
    equivalence, so that combination raises.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    if m.live_count <= r:
        raise ValueError(
            f"need more than r={r} live columns for a non-vacuous check"
        )
    cff_ok = cff_verify(m, 1, r, 1)
    weak_ok = verify_weak(m, r, 1).ok
    if cff_ok and not weak_ok:
        raise RuntimeError(
            "internal inconsistency: cover-free check passed but weak check failed"
        )
    return cff_ok and weak_ok


def _can_extend(cols: list[int], new: int, t: int, d: int) -> bool:
    # check only the new subsets, i.e. those containing the candidate
    for s in range(2, min(t, len(cols) + 1) + 1):
        for rest in combinations(cols, s - 1):
            ones = new
            twos = 0
            for w in rest:
                twos |= ones & w
                ones ^= w
            if (ones & ~twos).bit_count() < d:
                return False
    return True


def max_code_exhaustive(l: int, t: int, d: int) -> tuple[int, CodeMatrix]:
    """Exact maximum size of a weak (t,d) code of length l, with a witness.

    Branch-and-bound over all 2^l candidate vectors in numeric order;
    valid sets are extension-closed, so only subsets containing the new
    vector need rechecking.  Limited to l <= 4.
    """
    if l < 1 or l > 4:
        raise ValueError("exhaustive search supports l in 1..4 only")
    if t < 2 or d < 1:
        raise ValueError("need t >= 2 and d >= 1")
    universe = 1 << l
    best: list[int] = []

    def extend(current: list[int], start: int) -> None:
        nonlocal best
        if len(current) > len(best):
            best = list(current)
        for v in range(start, universe):
            if len(current) + (universe - v) <= len(best):
                return
            if _can_extend(current, v, t, d):
                current.append(v)
                extend(current, v + 1)
                current.pop()

    extend([], 0)
    return len(best), CodeMatrix(l, best)
