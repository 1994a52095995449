"""Closed-form rate bounds and exact violation probabilities.

All rates are in bits per coordinate (base-2 logarithms of code size
over length).  Binomial tails are summed in log space with compensated
summation so they stay accurate when individual terms underflow; the
relative error target on the supported grid is 1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb, exp, expm1, fsum, log, log1p, log2

from scipy.special import gammaln

LOG2E = math.log2(math.e)

# math.comb is exact; switch to log-gamma only where the coefficients
# get large enough that exactness stops being cheap
_EXACT_COMB_LIMIT = 64


def _check_t(t: int) -> None:
    if not isinstance(t, int) or t < 2:
        raise ValueError(f"strength t must be an integer >= 2, got {t!r}")


def rate_lower_new(t: int, d: int = 1) -> float:
    """Alteration lower bound on the asymptotic rate, log2(e)/(t-1) (1-1/t)^(t-1).

    Independent of d; d is accepted for signature symmetry with the
    other bounds.
    """
    _check_t(t)
    if d < 1:
        raise ValueError("d must be >= 1")
    return LOG2E / (t - 1) * (1.0 - 1.0 / t) ** (t - 1)


def rate_lower_prior(t: int, d: int = 1) -> float:
    """Previously sharpest general lower bound, log2(e)/t (1-1/t)^(t-1)."""
    _check_t(t)
    if d < 1:
        raise ValueError("d must be >= 1")
    return LOG2E / t * (1.0 - 1.0 / t) ** (t - 1)


def rate_upper(t: int) -> float:
    """Strict upper bound 1/floor(t/2) via locally thin set systems."""
    _check_t(t)
    return 1.0 / (t // 2)


def weight_one_row_prob(s: int, p: float) -> float:
    """Probability s p (1-p)^(s-1) that a row of an l x s p-random matrix
    has weight exactly 1."""
    if not isinstance(s, int) or s < 1:
        raise ValueError(f"s must be an integer >= 1, got {s!r}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0,1), got {p!r}")
    return s * p * (1.0 - p) ** (s - 1)


def _log_comb(n: int, k: int) -> float:
    if n <= _EXACT_COMB_LIMIT:
        return log(comb(n, k))
    return float(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))


def _log_binom_tail(q: float, l: int, d: int) -> float:
    """log of sum_{i=0}^{d-1} C(l,i) q^i (1-q)^(l-i), q in (0,1)."""
    lq = log(q)
    l1q = log1p(-q)
    logs = [_log_comb(l, i) + i * lq + (l - i) * l1q for i in range(d)]
    m = max(logs)
    return m + log(fsum(exp(x - m) for x in logs))


def prob_violation(s: int, p: float, l: int, d: int) -> float:
    """Exact probability that an l x s p-random matrix has at most d-1
    rows of weight 1: the lower binomial tail at success probability
    weight_one_row_prob(s, p)."""
    if s < 2:
        raise ValueError("s must be >= 2")
    if not 1 <= d <= l:
        raise ValueError(f"need 1 <= d <= l, got d={d}, l={l}")
    q = weight_one_row_prob(s, p)
    value = exp(_log_binom_tail(q, l, d))
    return min(value, 1.0)


def expected_violations(n: int, t: int, d: int, l: int, p: float) -> float:
    """Exact expected number of violated subsets in an l x n p-random
    matrix: sum over s of C(n,s) prob_violation(s, p, l, d)."""
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an integer >= 2")
    _check_t(t)
    if not 1 <= d <= l:
        raise ValueError(f"need 1 <= d <= l, got d={d}, l={l}")
    terms = []
    for s in range(2, min(t, n) + 1):
        q = weight_one_row_prob(s, p)
        terms.append(exp(_log_comb(n, s) + _log_binom_tail(q, l, d)))
    return fsum(terms)


def finite_rate(t: int, d: int, l: int, f: float) -> float:
    """Rate target of the alteration construction at finite length:

        log2(e)/(t-1) (1-1/t)^(t-1) - log2(2 f (t-1) d l^d)/l - 2/l

    Converges to rate_lower_new(t) from below as l grows.
    """
    _check_t(t)
    if d < 1:
        raise ValueError("d must be >= 1")
    if l <= d:
        raise ValueError(f"need l > d, got l={l}, d={d}")
    if f <= 0:
        raise ValueError("f must be positive")
    # log2(2 f (t-1) d l^d) decomposed to dodge the huge l**d integer
    log_penalty = 1.0 + log2(f) + log2(t - 1) + log2(d) + d * log2(l)
    return rate_lower_new(t, d) - log_penalty / l - 2.0 / l


def cff_rate_alteration(w: int, r: int) -> float:
    """Alteration lower bound w^w r^r / ((w+r-1)(w+r)^(w+r)) on the
    asymptotic cover-free family rate."""
    return _cff_closed_form(w, r, eight=False, plus_one=False)


def cff_rate_deng(w: int, r: int) -> float:
    """Prior bound w^w r^r / (8 (w+r-1)(w+r)^(w+r))."""
    return _cff_closed_form(w, r, eight=True, plus_one=False)


def cff_rate_bui(w: int, r: int) -> float:
    """Prior bound w^w r^r / (w+r)^(w+r+1)."""
    return _cff_closed_form(w, r, eight=False, plus_one=True)


def _cff_closed_form(w: int, r: int, eight: bool, plus_one: bool) -> float:
    if w < 1 or r < 1:
        raise ValueError("w and r must be >= 1")
    total = w + r
    log_value = w * log(w) + r * log(r) - total * log(total)
    if plus_one:
        log_value -= log(total)
    else:
        log_value -= log(total - 1)
    if eight:
        log_value -= log(8.0)
    return exp(log_value)


@dataclass(frozen=True)
class BoundRow:
    t: int
    d: int
    lower_prior: float
    lower_new: float
    upper: float
    finite_rate: float

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "d": self.d,
            "lower_prior": self.lower_prior,
            "lower_new": self.lower_new,
            "upper": self.upper,
            "finite_rate": self.finite_rate,
        }


@dataclass
class BoundTable:
    """Rate bounds over a strength grid, ready for CSV or JSON reports."""

    l: int
    f: float
    rows: list[BoundRow]

    @classmethod
    def build(cls, t_values, d: int, l: int, f: float) -> "BoundTable":
        rows = [
            BoundRow(
                t=t,
                d=d,
                lower_prior=rate_lower_prior(t, d),
                lower_new=rate_lower_new(t, d),
                upper=rate_upper(t),
                finite_rate=finite_rate(t, d, l, f),
            )
            for t in t_values
        ]
        return cls(l=l, f=f, rows=rows)

    def to_csv(self) -> str:
        lines = ["t,d,lower_prior,lower_new,upper,finite_rate"]
        for row in self.rows:
            lines.append(
                f"{row.t},{row.d},{row.lower_prior!r},{row.lower_new!r},"
                f"{row.upper!r},{row.finite_rate!r}"
            )
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "f": self.f,
            "rows": [row.to_dict() for row in self.rows],
        }
