"""Dense binary code matrices with packed integer columns.

A code of length l and size n is stored column-major: one arbitrary
precision Python int per codeword, bit i of column j being the bit of
codeword j at coordinate i.  All row-weight counting reduces to bitwise
ops plus popcount, which is the hot path of subset verification.

Columns keep their index for the lifetime of the matrix.  Removal during
the alteration pass marks a column dead instead of compacting, so indices
stay stable and logs stay reproducible; ``compact`` collapses the live
columns into a fresh matrix once construction is done.
"""

from __future__ import annotations

from typing import Iterable, Sequence, TextIO


class ParseError(ValueError):
    """Malformed .wsc matrix file."""


def _column_to_int(column) -> tuple[int, int]:
    """Return (bits, length) for a column given as a string or 0/1 sequence."""
    if isinstance(column, str):
        bits = 0
        for i, ch in enumerate(column):
            if ch == "1":
                bits |= 1 << i
            elif ch != "0":
                raise ValueError(f"column character {ch!r} is not 0 or 1")
        return bits, len(column)
    bits = 0
    length = 0
    for i, b in enumerate(column):
        if b not in (0, 1):
            raise ValueError(f"column entry {b!r} is not 0 or 1")
        bits |= b << i
        length += 1
    return bits, length


class CodeMatrix:
    """l x n binary matrix over F_2, one packed-int column per codeword."""

    __slots__ = ("length", "_cols", "_live", "_live_count")

    def __init__(self, length: int, columns: Sequence[int]):
        if length < 1:
            raise ValueError("length must be a positive integer")
        mask = (1 << length) - 1
        cols = []
        for c in columns:
            if c < 0 or c & ~mask:
                raise ValueError("column has bits beyond the declared length")
            cols.append(c)
        self.length = length
        self._cols = cols
        self._live = [True] * len(cols)
        self._live_count = len(cols)

    @classmethod
    def from_columns(cls, columns: Iterable, length: int | None = None) -> "CodeMatrix":
        """Build a matrix from l-bit vectors (strings like "110" or 0/1 sequences).

        Character/entry k of a vector is the bit at coordinate k.  An empty
        column list needs an explicit ``length``.
        """
        ints = []
        l = length
        for column in columns:
            bits, this_l = _column_to_int(column)
            if l is None:
                l = this_l
            elif this_l != l:
                raise ValueError(
                    f"mixed column lengths: expected {l}, got {this_l}"
                )
            ints.append(bits)
        if l is None:
            raise ValueError("empty column list needs an explicit length")
        if l == 0:
            raise ValueError("length must be a positive integer")
        return cls(l, ints)

    @property
    def n(self) -> int:
        """Total number of column slots, dead ones included."""
        return len(self._cols)

    @property
    def live_count(self) -> int:
        return self._live_count

    def is_live(self, j: int) -> bool:
        return self._live[j]

    def live_indices(self) -> tuple[int, ...]:
        return tuple(j for j, alive in enumerate(self._live) if alive)

    def column(self, j: int) -> int:
        """Packed bits of column j (dead columns keep their bits)."""
        return self._cols[j]

    def column_string(self, j: int) -> str:
        bits = self._cols[j]
        return "".join("1" if bits >> i & 1 else "0" for i in range(self.length))

    def support(self, j: int) -> set[int]:
        """Coordinates where column j is 1."""
        if j >= len(self._cols) or j < 0:
            raise IndexError(f"column index {j} out of range 0..{len(self._cols) - 1}")
        bits = self._cols[j]
        out = set()
        i = 0
        while bits:
            if bits & 1:
                out.add(i)
            bits >>= 1
            i += 1
        return out

    def weight(self, j: int) -> int:
        if j >= len(self._cols) or j < 0:
            raise IndexError(f"column index {j} out of range 0..{len(self._cols) - 1}")
        return self._cols[j].bit_count()

    def _check_live(self, j: int) -> None:
        if j < 0 or j >= len(self._cols):
            raise ValueError(f"column index {j} out of range")
        if not self._live[j]:
            raise ValueError(f"column {j} is dead")

    def weight_one_row_count(self, subset: Iterable[int]) -> int:
        """Number of coordinates where exactly one selected column is 1.

        Uses the saturating two-bit accumulator: ``ones`` tracks coordinates
        hit an odd number of times, ``twos`` coordinates hit twice or more,
        so exactly-one is ``ones & ~twos``.
        """
        ones = 0
        twos = 0
        count = 0
        for j in subset:
            self._check_live(j)
            w = self._cols[j]
            twos |= ones & w
            ones ^= w
            count += 1
        if count == 0:
            raise ValueError("subset must be nonempty")
        return (ones & ~twos).bit_count()

    def hamming_distance(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("hamming distance needs two distinct columns")
        self._check_live(i)
        self._check_live(j)
        return (self._cols[i] ^ self._cols[j]).bit_count()

    def remove_column(self, j: int) -> None:
        """Mark column j dead.  Surviving columns keep bits and indices."""
        self._check_live(j)
        self._live[j] = False
        self._live_count -= 1

    def compact(self) -> "CodeMatrix":
        """New matrix holding only the live columns, original order kept."""
        return CodeMatrix(self.length, [self._cols[j] for j in self.live_indices()])

    def copy(self) -> "CodeMatrix":
        m = CodeMatrix(self.length, list(self._cols))
        m._live = list(self._live)
        m._live_count = self._live_count
        return m

    def __eq__(self, other) -> bool:
        if not isinstance(other, CodeMatrix):
            return NotImplemented
        return (
            self.length == other.length
            and self._cols == other._cols
            and self._live == other._live
        )

    def __repr__(self) -> str:
        return (
            f"CodeMatrix(length={self.length}, n={self.n}, "
            f"live={self._live_count})"
        )


def write_wsc(matrix: CodeMatrix, t: int, d: int, stream: TextIO) -> None:
    """Write the live columns as a .wsc text matrix.

    Format: header line ``l n t d``, then l rows of n characters from
    {0,1}; row i column j is the bit of codeword j at coordinate i.
    """
    live = matrix.live_indices()
    cols = [matrix.column(j) for j in live]
    l = matrix.length
    stream.write(f"{l} {len(cols)} {t} {d}\n")
    for i in range(l):
        stream.write("".join("1" if c >> i & 1 else "0" for c in cols))
        stream.write("\n")


def dumps_wsc(matrix: CodeMatrix, t: int, d: int) -> str:
    import io

    buf = io.StringIO()
    write_wsc(matrix, t, d, buf)
    return buf.getvalue()


def read_wsc(stream: TextIO) -> tuple[CodeMatrix, int, int]:
    """Parse a .wsc file; returns (matrix, t, d).

    Strict: exactly l data lines of exactly n characters, 0/1 only, and a
    trailing newline.  Anything else raises ParseError.
    """
    text = stream.read()
    if not text.endswith("\n"):
        raise ParseError("missing trailing newline")
    lines = text.split("\n")
    # split leaves one empty string after the final newline
    if lines and lines[-1] == "":
        lines.pop()
    else:  # pragma: no cover - endswith check above makes this unreachable
        raise ParseError("missing trailing newline")
    if not lines:
        raise ParseError("empty file")
    header = lines[0].split(" ")
    if len(header) != 4:
        raise ParseError(f"header must be 'l n t d', got {lines[0]!r}")
    try:
        l, n, t, d = (int(x) for x in header)
    except ValueError as exc:
        raise ParseError(f"non-integer header field in {lines[0]!r}") from exc
    if l < 1 or n < 0 or t < 2 or d < 1:
        raise ParseError(f"header out of domain: l={l} n={n} t={t} d={d}")
    if len(lines) - 1 != l:
        raise ParseError(f"expected {l} data rows, found {len(lines) - 1}")
    cols = [0] * n
    for i, line in enumerate(lines[1:]):
        if len(line) != n:
            raise ParseError(f"row {i} has {len(line)} characters, expected {n}")
        for j, ch in enumerate(line):
            if ch == "1":
                cols[j] |= 1 << i
            elif ch != "0":
                raise ParseError(f"row {i} column {j}: invalid character {ch!r}")
    return CodeMatrix(l, cols), t, d


def loads_wsc(text: str) -> tuple[CodeMatrix, int, int]:
    import io

    return read_wsc(io.StringIO(text))
