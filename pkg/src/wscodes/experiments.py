"""Monte-Carlo checks of the exact formulas and the success guarantee.

Trials are partitioned into fixed-size chunks and every chunk draws its
generator from (master seed, chunk index), so estimates are bit-identical
no matter how many worker threads process the chunks.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb, sqrt

import numpy as np

from .bounds import expected_violations, finite_rate, rate_lower_new
from .construct import (
    CapacityError,
    ConstructionConfig,
    alteration_construct,
    target_size,
)
from .verify import iter_violated_subsets

_CHUNK_TRIALS = 4096
# exact per-trial violation counting enumerates every subset; refuse
# configurations where that blows up
_MAX_SUBSETS_PER_TRIAL = 10**8


@dataclass(frozen=True)
class ProbabilityEstimate:
    estimate: float
    stderr: float
    trials: int

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "stderr": self.stderr,
            "trials": self.trials,
        }


@dataclass(frozen=True)
class TrialSummary:
    trials: int
    successes: int
    success_rate: float
    threshold: float
    standard_error: float
    guarantee_applicable: bool
    expected_violations: float

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "success_rate": self.success_rate,
            "threshold": self.threshold,
            "standard_error": self.standard_error,
            "guarantee_applicable": self.guarantee_applicable,
            "expected_violations": self.expected_violations,
        }


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(chunk,)))


def _chunk_ranges(trials: int, chunk_size: int):
    return [
        (c, min(chunk_size, trials - c * chunk_size))
        for c in range((trials + chunk_size - 1) // chunk_size)
    ]


def _run_chunks(worker, chunks, threads: int):
    if threads <= 1 or len(chunks) <= 1:
        return [worker(c, m) for c, m in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda cm: worker(*cm), chunks))


def estimate_violation_probability(
    s: int,
    p: float,
    l: int,
    d: int,
    trials: int,
    seed: int = 0,
    threads: int = 1,
) -> ProbabilityEstimate:
    """Fraction of sampled l x s matrices with at most d-1 weight-1 rows.

    The Monte-Carlo counterpart of prob_violation, with the binomial
    standard error of the estimate.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 1 <= d <= l:
        raise ValueError(f"need 1 <= d <= l, got d={d}, l={l}")
    if s < 2:
        raise ValueError("s must be >= 2")
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0,1)")

    def worker(chunk: int, m: int) -> int:
        rng = _chunk_rng(seed, chunk)
        bits = rng.random((m, l, s)) < p
        weight_one_rows = (bits.sum(axis=2) == 1).sum(axis=1)
        return int((weight_one_rows <= d - 1).sum())

    hits = sum(_run_chunks(worker, _chunk_ranges(trials, _CHUNK_TRIALS), threads))
    estimate = hits / trials
    stderr = sqrt(estimate * (1.0 - estimate) / trials)
    return ProbabilityEstimate(estimate, stderr, trials)


def _count_violations_cols(cols: list[int], t: int, d: int) -> int:
    sizes = range(2, min(t, len(cols)) + 1)
    return sum(1 for _ in iter_violated_subsets(cols, d, sizes))


def estimate_success_probability(
    cfg: ConstructionConfig, trials: int, threads: int = 1
) -> TrialSummary:
    """Empirical probability that a fresh sample has fewer than n/2
    violated subsets, against the 1 - 1/f guarantee.

    The guarantee only applies when the exact expectation satisfies
    E <= n/(2f); the summary reports whether it does either way.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = cfg.n_override if cfg.n_override is not None else target_size(
        cfg.t, cfg.d, cfg.l, cfg.f, cfg.n_guard
    )
    if n < 2:
        raise ValueError("success trials need n >= 2")
    total_subsets = sum(comb(n, s) for s in range(2, min(cfg.t, n) + 1))
    if total_subsets > _MAX_SUBSETS_PER_TRIAL:
        raise ValueError(
            f"{total_subsets} subsets per trial exceeds the counting guard"
        )
    expectation = expected_violations(n, cfg.t, cfg.d, cfg.l, cfg.p)
    applicable = expectation <= n / (2.0 * cfg.f)

    l, p = cfg.l, cfg.p
    chunk_size = 64

    def worker(chunk: int, m: int) -> int:
        rng = _chunk_rng(cfg.seed, chunk)
        successes = 0
        for _ in range(m):
            bits = rng.random((l, n)) < p
            packed = np.packbits(bits, axis=0, bitorder="little")
            cols = [int.from_bytes(packed[:, j].tobytes(), "little") for j in range(n)]
            if _count_violations_cols(cols, cfg.t, cfg.d) < n / 2:
                successes += 1
        return successes

    successes = sum(_run_chunks(worker, _chunk_ranges(trials, chunk_size), threads))
    rate = successes / trials
    stderr = sqrt(rate * (1.0 - rate) / trials)
    return TrialSummary(
        trials=trials,
        successes=successes,
        success_rate=rate,
        threshold=1.0 - 1.0 / cfg.f,
        standard_error=stderr,
        guarantee_applicable=applicable,
        expected_violations=expectation,
    )


@dataclass(frozen=True)
class SweepRow:
    l: int
    n: int | None
    final_n: int | None
    achieved_rate: float | None
    finite_rate: float
    lower_new: float
    status: str

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "n": self.n,
            "final_n": self.final_n,
            "achieved_rate": self.achieved_rate,
            "finite_rate": self.finite_rate,
            "lower_new": self.lower_new,
            "status": self.status,
        }


def _row_seed(seed: int, index: int) -> int:
    state = np.random.SeedSequence(entropy=seed, spawn_key=(index,)).generate_state(1, np.uint64)
    return int(state[0])


def rate_sweep(
    t: int,
    d: int,
    f: float,
    l_values,
    seed: int = 0,
    n_override: int | None = None,
    n_guard: int | None = None,
) -> list[SweepRow]:
    """One construction per length; achieved rate next to the targets.

    Rows whose formula size overflows the guard are marked failed and the
    sweep continues.  Row i draws its seed from (seed, i), so a sweep is
    reproducible as a whole.
    """
    rows: list[SweepRow] = []
    for index, l in enumerate(l_values):
        target = finite_rate(t, d, l, f)
        asymptotic = rate_lower_new(t, d)
        kwargs = {}
        if n_guard is not None:
            kwargs["n_guard"] = n_guard
        try:
            cfg = ConstructionConfig(
                t=t,
                d=d,
                l=l,
                f=f,
                seed=_row_seed(seed, index),
                n_override=n_override,
                **kwargs,
            )
            out, log = alteration_construct(cfg)
        except CapacityError as exc:
            rows.append(
                SweepRow(l, None, None, None, target, asymptotic, f"failed: {exc}")
            )
            continue
        rows.append(
            SweepRow(
                l=l,
                n=log.initial_n,
                final_n=log.final_n,
                achieved_rate=log.achieved_rate,
                finite_rate=target,
                lower_new=asymptotic,
                status="ok",
            )
        )
    return rows


def sweep_to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["l", "n", "final_n", "achieved_rate", "finite_rate", "lower_new", "status"])
    for row in rows:
        writer.writerow(
            [
                row.l,
                "" if row.n is None else row.n,
                "" if row.final_n is None else row.final_n,
                "" if row.achieved_rate is None else repr(row.achieved_rate),
                repr(row.finite_rate),
                repr(row.lower_new),
                row.status,
            ]
        )
    return buf.getvalue()
