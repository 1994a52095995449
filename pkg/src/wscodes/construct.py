"""Randomized sample-and-alter construction.

Sample an l x n matrix with i.i.d. Bernoulli(p) entries (p = 1/t by
default), then walk all column subsets of size 2..t in canonical order
and delete the largest-index live column of each violated subset whose
columns are all still live.  Violation depends only on the subset's own
columns, so a single pass leaves no violated subset alive and the output
verifies unconditionally.

The same pass with the cover-free notion of a violated structure (a
disjoint pair X, Y with |X| = w, |Y| = r covering fewer than d
coordinates) builds (w,r;d) cover-free families.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import mpmath as mp
import numpy as np

from .bounds import LOG2E, finite_rate
from .matrix import CodeMatrix
from .verify import iter_cff_violations, iter_violated_subsets

DEFAULT_N_GUARD = 1 << 20


class CapacityError(RuntimeError):
    """Requested initial code size exceeds the configured guard."""


class RateWarning(UserWarning):
    """The finite-length rate target is non-positive; the sampled size is
    too small for the success guarantee to mean anything."""


@dataclass
class ConstructionConfig:
    """Inputs of the alteration construction.

    ``f`` trades initial size against success probability: the output
    reaches the finite-length rate target with probability >= 1 - 1/f
    when n comes from the size formula.  ``n_override`` replaces the
    formula's n for desk-scale experiments (the guarantee is only
    claimed for the formula's n).
    """

    t: int
    d: int
    l: int
    f: float = 2.0
    seed: int = 0
    p_override: float | None = None
    n_override: int | None = None
    n_guard: int = DEFAULT_N_GUARD

    def __post_init__(self) -> None:
        if not isinstance(self.t, int) or self.t < 2:
            raise ValueError(f"t must be an integer >= 2, got {self.t!r}")
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError(f"d must be an integer >= 1, got {self.d!r}")
        if not isinstance(self.l, int) or self.l <= self.d:
            raise ValueError(f"need l > d, got l={self.l!r}, d={self.d!r}")
        if self.f <= 0:
            raise ValueError("f must be positive")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")
        if self.p_override is not None and not 0.0 < self.p_override < 1.0:
            raise ValueError("p_override must lie in (0,1)")
        if self.n_override is not None and self.n_override < 1:
            raise ValueError("n_override must be >= 1")
        if self.n_guard < 1:
            raise ValueError("n_guard must be >= 1")

    @property
    def p(self) -> float:
        return self.p_override if self.p_override is not None else 1.0 / self.t

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "d": self.d,
            "l": self.l,
            "f": self.f,
            "seed": self.seed,
            "p": self.p,
            "n_override": self.n_override,
            "n_guard": self.n_guard,
        }


@dataclass(frozen=True)
class DeletionRecord:
    subset: tuple[int, ...]
    removed: int

    def to_dict(self) -> dict:
        return {"subset": list(self.subset), "removed": self.removed}


@dataclass
class ConstructionLog:
    initial_n: int
    deletions: list[DeletionRecord]
    final_n: int
    achieved_rate: float
    target_rate: float
    success: bool
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "config": dict(self.config),
            "initial_n": self.initial_n,
            "deletions": [rec.to_dict() for rec in self.deletions],
            "final_n": self.final_n,
            "achieved_rate": self.achieved_rate,
            "target_rate": self.target_rate,
            "success": self.success,
        }


def _size_from_exponent(rate_terms, l: int, n_guard: int, label: str) -> int:
    """ceil(2^(rate*l + 1)) in extended precision, guarded.

    ``rate_terms`` is a list of mpmath summands for the rate so callers
    can hand over exactly decomposed logarithms.
    """
    with mp.workdps(60):
        rate = mp.fsum(rate_terms)
        exponent = rate * l + 1
        if exponent > mp.log(n_guard, 2):
            raise CapacityError(
                f"{label}: initial size 2^{mp.nstr(exponent, 12)} exceeds the "
                f"guard of {n_guard} columns"
            )
        n = int(mp.ceil(mp.mpf(2) ** exponent))
        if rate <= 0:
            warnings.warn(
                f"{label}: nonpositive rate target {mp.nstr(rate, 8)}; sampled "
                f"size n={n} is too small for the guarantee to apply",
                RateWarning,
                stacklevel=3,
            )
    return max(n, 1)


def target_size(
    t: int, d: int, l: int, f: float, n_guard: int = DEFAULT_N_GUARD
) -> int:
    """Initial sample size ceil(2^(finite_rate(t,d,l,f) * l + 1)).

    Raises CapacityError when the result would exceed ``n_guard``; warns
    with RateWarning when the rate target is non-positive (the returned
    size can then be as small as 1).
    """
    finite_rate(t, d, l, f)  # parameter domain checks
    with mp.workdps(60):
        log2e = mp.log(mp.e, 2)
        terms = [
            log2e / (t - 1) * (1 - mp.mpf(1) / t) ** (t - 1),
            -(1 + mp.log(f, 2) + mp.log(t - 1, 2) + mp.log(d, 2) + d * mp.log(l, 2)) / l,
            -mp.mpf(2) / l,
        ]
    return _size_from_exponent(terms, l, n_guard, f"target_size(t={t},d={d},l={l},f={f})")


def _sample_columns(rng: np.random.Generator, l: int, n: int, p: float) -> list[int]:
    bits = rng.random((l, n)) < p
    packed = np.packbits(bits, axis=0, bitorder="little")
    return [int.from_bytes(packed[:, j].tobytes(), "little") for j in range(n)]


def sample_random_code(l: int, n: int, p: float, seed: int) -> CodeMatrix:
    """l x n matrix with i.i.d. Bernoulli(p) entries, reproducible by seed."""
    if l < 1:
        raise ValueError("l must be >= 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0,1)")
    rng = np.random.default_rng(seed)
    return CodeMatrix(l, _sample_columns(rng, l, n, p))


def _alteration_pass(m: CodeMatrix, violated_iter) -> list[DeletionRecord]:
    """Delete the largest-index column of each fully-live violated subset.

    ``violated_iter`` yields position tuples in canonical order over the
    initial (all-live) column indexing.  Because violation is intrinsic
    to a subset's own columns, skipping subsets that lost a column is
    exactly the one-pass deletion rule.
    """
    deletions: list[DeletionRecord] = []
    live = m._live  # single-writer pass; direct flag reads keep it O(1)
    for positions in violated_iter:
        for p in positions:
            if not live[p]:
                break
        else:
            victim = positions[-1]
            m.remove_column(victim)
            deletions.append(DeletionRecord(tuple(positions), victim))
    return deletions


def alteration_construct(cfg: ConstructionConfig) -> tuple[CodeMatrix, ConstructionLog]:
    """Run the sample-and-alter construction; the output always verifies.

    Returns the compacted surviving code and a log of every deletion.
    Deterministic for a fixed config.
    """
    n = cfg.n_override if cfg.n_override is not None else target_size(
        cfg.t, cfg.d, cfg.l, cfg.f, cfg.n_guard
    )
    if n > cfg.n_guard:
        raise CapacityError(f"n_override={n} exceeds the guard of {cfg.n_guard}")
    m = sample_random_code(cfg.l, n, cfg.p, cfg.seed)
    cols = [m.column(j) for j in range(n)]
    sizes = range(2, min(cfg.t, n) + 1)
    violated = (pos for pos, _ in iter_violated_subsets(cols, cfg.d, sizes))
    deletions = _alteration_pass(m, violated)
    out = m.compact()
    target = finite_rate(cfg.t, cfg.d, cfg.l, cfg.f)
    achieved = math.log2(out.n) / cfg.l
    log = ConstructionLog(
        initial_n=n,
        deletions=deletions,
        final_n=out.n,
        achieved_rate=achieved,
        target_rate=target,
        success=achieved >= target,
        config=dict(cfg.to_dict(), kind="weak"),
    )
    return out, log


def cff_target_size(
    w: int, r: int, d: int, l: int, f: float, n_guard: int = DEFAULT_N_GUARD
) -> int:
    """Initial sample size for the cover-free variant.

    Mirrors target_size with the weak-code quantities swapped for their
    cover-free analogues: per-coordinate success probability
    w^w r^r/(w+r)^(w+r) at p = w/(w+r), and w+r-1 in place of t-1.
    """
    if w < 1 or r < 1 or d < 1:
        raise ValueError("w, r, d must all be >= 1")
    if l <= d:
        raise ValueError(f"need l > d, got l={l}, d={d}")
    if f <= 0:
        raise ValueError("f must be positive")
    total = w + r
    with mp.workdps(60):
        log2e = mp.log(mp.e, 2)
        q_best = mp.mpf(w) ** w * mp.mpf(r) ** r / mp.mpf(total) ** total
        terms = [
            log2e * q_best / (total - 1),
            -(1 + mp.log(f, 2) + mp.log(total - 1, 2) + mp.log(d, 2) + d * mp.log(l, 2)) / l,
            -mp.mpf(2) / l,
        ]
    return _size_from_exponent(
        terms, l, n_guard, f"cff_target_size(w={w},r={r},d={d},l={l},f={f})"
    )


def cff_finite_rate(w: int, r: int, d: int, l: int, f: float) -> float:
    """Finite-length analogue of finite_rate for the cover-free variant."""
    total = w + r
    q_best = math.exp(w * math.log(w) + r * math.log(r) - total * math.log(total))
    log_penalty = 1.0 + math.log2(f) + math.log2(total - 1) + math.log2(d) + d * math.log2(l)
    return LOG2E * q_best / (total - 1) - log_penalty / l - 2.0 / l


def cff_alteration_construct(
    w: int,
    r: int,
    d: int,
    l: int,
    f: float = 2.0,
    n_override: int | None = None,
    seed: int = 0,
    p_override: float | None = None,
    n_guard: int = DEFAULT_N_GUARD,
) -> tuple[CodeMatrix, ConstructionLog]:
    """Sample-and-alter construction of a (w,r;d) cover-free family.

    Sampling probability defaults to w/(w+r), the maximizer of the
    per-coordinate success probability p^w (1-p)^r.  On a violated
    structure the largest-index column of X union Y is removed.
    """
    if w < 1 or r < 1 or d < 1:
        raise ValueError("w, r, d must all be >= 1")
    if l <= d:
        raise ValueError(f"need l > d, got l={l}, d={d}")
    if n_override is not None and n_override < 1:
        raise ValueError("n_override must be >= 1")
    p = p_override if p_override is not None else w / (w + r)
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0,1)")
    n = n_override if n_override is not None else cff_target_size(w, r, d, l, f, n_guard)
    if n > n_guard:
        raise CapacityError(f"n_override={n} exceeds the guard of {n_guard}")
    m = sample_random_code(l, n, p, seed)
    cols = [m.column(j) for j in range(n)]
    violated = (
        tuple(sorted(xs + ys)) for xs, ys in iter_cff_violations(cols, w, r, d)
    )
    deletions = _alteration_pass(m, violated)
    out = m.compact()
    target = cff_finite_rate(w, r, d, l, f)
    achieved = math.log2(out.n) / l
    log = ConstructionLog(
        initial_n=n,
        deletions=deletions,
        final_n=out.n,
        achieved_rate=achieved,
        target_rate=target,
        success=achieved >= target,
        config={
            "w": w,
            "r": r,
            "d": d,
            "l": l,
            "f": f,
            "seed": seed,
            "p": p,
            "n_override": n_override,
            "n_guard": n_guard,
            "kind": "cff",
        },
    )
    return out, log
