"""Bracketed 1-D numerics and the catalog of published closed forms.

Bisection and golden-section routines back the tuned-base root and the
randomized-schedule base optimization.  The closed-form catalog stores
each published bound exactly as displayed, even where measurement
disagrees; disagreement is surfaced by the claim runner, never patched
here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    tol: float = 1e-12

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.tol <= 0:
            raise ValueError(f"bracket tol must be > 0, got {self.tol}")


def bisect_root(f: Callable[[float], float], br: Bracket) -> float:
    """Root of a continuous sign-changing function by bisection.

    Returns the bracket midpoint once its width drops below br.tol; an
    endpoint with f exactly zero is returned directly.
    """
    lo, hi = br.lo, br.hi
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise ValueError(
            f"no sign change on [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}"
        )
    while hi - lo > br.tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return 0.5 * (lo + hi)


def lemma_root(p: float) -> float:
    """Root of e^x(1-p) + e^x p^2/(4x) - 1 in (0, p/2].

    The function blows up to +inf as x -> 0+ and is nonpositive at
    x = p/2 for every p in (0, 1], so bisection from a tiny positive
    left endpoint always brackets the smallest root.  This root tunes
    the exploration base when detection is probabilistic.
    """
    if not 0 < p <= 1:
        raise ValueError(f"p must be in (0, 1], got {p}")

    def f(x: float) -> float:
        return math.exp(x) * ((1.0 - p) + p * p / (4.0 * x)) - 1.0

    hi = p / 2.0
    if f(hi) > 0:
        raise ValueError(f"no root at or below p/2 for p={p}")
    return bisect_root(f, Bracket(1e-9, hi, tol=1e-15))


def golden_min(
    g: Callable[[float], float], br: Bracket
) -> tuple[float, float]:
    """(argmin, min) of a unimodal function by golden-section search.

    Unimodality on the bracket is the caller's responsibility; the
    final bracket width is at most br.tol.
    """
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = br.lo, br.hi
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    g1, g2 = g(x1), g(x2)
    while b - a > br.tol:
        if g1 <= g2:
            b, x2, g2 = x2, x1, g1
            x1 = b - inv_phi * (b - a)
            g1 = g(x1)
        else:
            a, x1, g1 = x1, x2, g2
            x2 = a + inv_phi * (b - a)
            g2 = g(x2)
        if x1 >= x2:
            break
    arg = 0.5 * (a + b)
    return arg, g(arg)


def _ceil_half(r: int) -> int:
    return (r + 1) // 2


_E = math.e


def _cf_search_ratio_printed(m: int) -> float:
    b = m / (m - 1.0)
    return 1.0 + 2.0 * (b**m - 1.0) / (b - 1.0)


def _cf_search_ratio_base(m: int, b: float) -> float:
    return 1.0 + 2.0 * (b**m - 1.0) / (b - 1.0)


def _cf_sched_ratio_optimal(n: int) -> float:
    b = (n + 1.0) / n
    return b ** (n + 1) / (b - 1.0)


def _cf_sched_ratio_base(n: int, b: float) -> float:
    return b ** (n + 1) / (b - 1.0)


def _cf_randomized_ratio(n: int, b: float) -> float:
    return n * b ** (n + 1) * math.log(b) / ((b**n - 1.0) * (b - 1.0))


_CLOSED_FORMS: dict[str, Callable[..., float]] = {
    # Worst-case ratios of the core strategy families.
    "search-ratio-printed": _cf_search_ratio_printed,
    "search-ratio-base": _cf_search_ratio_base,
    "sched-ratio-optimal": _cf_sched_ratio_optimal,
    "sched-ratio-base": _cf_sched_ratio_base,
    # Probabilistic-detection bounds.
    "prob-search-lower": lambda m, p: m / (2.0 * p),
    "prob-search-upper": lambda m, p: 1.0 + 8.0 * m / (p * p),
    "prob-sched-lower": lambda n, p: n / p,
    "prob-sched-upper": lambda n, p: _E * n / p + _E / p,
    # Redundant-answer (fault-tolerant) bounds.
    "fault-search-lower": lambda m, r: r * m / 2.0,
    "fault-search-upper": lambda m, r: 2.0 * _E * (_ceil_half(r) * m - 1.0) + 1.0,
    "nm-search-upper": lambda m, r: r * (m - 1.0) * (m / (m - 1.0)) ** m + 2.0 - r,
    "pseudo-repeat-ratio": lambda n, r: r * n * ((n + 1.0) / n) ** (n + 1),
    "rth-largest-ratio": lambda n, r: (r * n + 1.0)
    * (1.0 + 1.0 / (r * n)) ** (r * n),
    # Randomized schedule.
    "randomized-ratio": _cf_randomized_ratio,
    "randomized-ratio-asymptote": lambda n: (n + 1.0) * _E / (_E - 1.0),
    # Preemptive and standard accounting (round-robin and doubling).
    "rr-worst": lambda n, b: n * (b + 1.0),
    "rr-asymptotic": lambda n, b: n * b,
    "preemption-ceiling": lambda n, b, t: n * math.log(t * (b - 1.0) / n + 1.0, b)
    + n,
    "contract-ceiling": lambda b, t: math.log(t * (b - 1.0) + 1.0, b) + 1.0,
    "expanding-search-worst": lambda m, b: (b + 1.0) * m,
    "expanding-search-asymptotic": lambda m, b: b * m,
    "turn-ceiling": lambda b, d: math.log(d * (b - 1.0) + 1.0, b) + 1.0,
    "expanding-turn-ceiling": lambda m, b, d: m * math.log(d * (b - 1.0) / m + 1.0, b)
    + m,
}


def closed_form(claim_id: str, **params: float) -> float:
    """Evaluate a published bound by its catalog id, verbatim as
    displayed in its source.  Raises KeyError for unknown ids."""
    try:
        fn = _CLOSED_FORMS[claim_id]
    except KeyError:
        raise KeyError(
            f"unknown claim id {claim_id!r}; known: {sorted(_CLOSED_FORMS)}"
        ) from None
    return fn(**params)


def closed_form_ids() -> list[str]:
    """All catalog ids, sorted."""
    return sorted(_CLOSED_FORMS)


def beta_r_star(n: int) -> tuple[float, float]:
    """(b_star, value) minimizing the randomized-schedule ratio over
    bases in [1+1e-6, 50].

    A 64-point logarithmic scan brackets the minimum before the
    golden-section refinement, guarding against surprises in the
    trusted unimodality.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")

    def g(b: float) -> float:
        return _cf_randomized_ratio(n, b)

    lo, hi = 1.0 + 1e-6, 50.0
    grid = [lo * (hi / lo) ** (i / 63.0) for i in range(64)]
    values = [g(b) for b in grid]
    i_min = values.index(min(values))
    a = grid[max(0, i_min - 1)]
    c = grid[min(len(grid) - 1, i_min + 1)]
    return golden_min(g, Bracket(a, c, tol=1e-10))


def figure1_curve(n_max: int) -> list[tuple[int, float, float, float, float]]:
    """Rows (n, best deterministic ratio, best randomized ratio, its
    base, randomized/deterministic) for n = 1..n_max."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    rows: list[tuple[int, float, float, float, float]] = []
    for n in range(1, n_max + 1):
        beta_star = _cf_sched_ratio_optimal(n)
        b_star, value = beta_r_star(n)
        rows.append((n, beta_star, value, b_star, value / beta_star))
    return rows
