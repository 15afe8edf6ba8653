"""Factories for the standard plan families.

Each factory returns a tagged SearchPlan or SchedulePlan; the tag lets
the evaluators attach the matching closed-form limit. Custom plans can
be built through make_custom_search / make_custom_schedule, which skip
the tagging and get purely numeric evaluation.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

import numpy as np

from .core import CostModel, Excursion, PlanTag, SchedulePlan, SearchPlan


def _require_base(b: float) -> None:
    if b <= 1:
        raise ValueError(f"growth base must be > 1, got {b}")


def make_exponential_search(m: int, b: float) -> SearchPlan:
    """Cyclic sweep of m rays with depths b^i.

    Excursion i goes out to b^i on ray i mod m and returns to the
    origin; every excursion starts from scratch (depth_inner 0), so the
    walker repays the approach each time.
    """
    if m < 2:
        raise ValueError(f"need at least 2 rays, got {m}")
    _require_base(b)

    def gen(i: int) -> Excursion:
        return Excursion(ray=i % m, depth_inner=0.0, depth_outer=float(b) ** i)

    return SearchPlan(
        ray_count=m,
        generator=gen,
        cost_model=CostModel.STANDARD,
        tag=PlanTag(kind="exponential", base=float(b)),
    )


def optimal_base_search(m: int) -> float:
    """The base minimizing the worst-case ratio of the cyclic
    exponential search on m rays."""
    if m < 2:
        raise ValueError(f"need at least 2 rays, got {m}")
    return m / (m - 1)


def make_nm_search(m: int, b: float, r: int) -> SearchPlan:
    """Exponential sweep whose newly uncovered segment is swept r times
    per excursion before the walker returns to the origin.

    The first m excursions sweep [0, b^i]; from excursion m onward the
    swept segment is [b^(i-m), b^i] and the approach below it is walked
    once each way.  With r = 1 the walk is path-equivalent to the plain
    exponential sweep; the families differ for r >= 2.
    """
    if m < 2:
        raise ValueError(f"need at least 2 rays, got {m}")
    _require_base(b)
    if r < 1:
        raise ValueError(f"sweep count must be >= 1, got {r}")

    def gen(i: int) -> Excursion:
        inner = float(b) ** (i - m) if i >= m else 0.0
        return Excursion(ray=i % m, depth_inner=inner, depth_outer=float(b) ** i)

    return SearchPlan(
        ray_count=m,
        generator=gen,
        cost_model=CostModel.STANDARD,
        tag=PlanTag(kind="nm", base=float(b), redundancy=r),
        traversals=r,
    )


def make_geometric_search(m: int, b: float) -> SearchPlan:
    """Phase-structured search under the expanding cost model.

    In phase p every ray's frontier advances by b^p, taking each ray
    from depth (b^p - 1)/(b - 1) to (b^(p+1) - 1)/(b - 1).  Only the new
    territory is charged.
    """
    if m < 2:
        raise ValueError(f"need at least 2 rays, got {m}")
    _require_base(b)

    def gen(i: int) -> Excursion:
        p = i // m
        inner = (float(b) ** p - 1.0) / (b - 1.0)
        outer = (float(b) ** (p + 1) - 1.0) / (b - 1.0)
        return Excursion(ray=i % m, depth_inner=inner, depth_outer=outer)

    return SearchPlan(
        ray_count=m,
        generator=gen,
        cost_model=CostModel.EXPANDING,
        tag=PlanTag(kind="geometric", base=float(b)),
    )


def make_exponential_schedule(n: int, b: float) -> SchedulePlan:
    """Round-robin schedule with lengths b^i: job i runs problem
    i mod n for b^i time units."""
    if n < 1:
        raise ValueError(f"need at least 1 problem, got {n}")
    _require_base(b)

    def gen(i: int) -> tuple[int, float]:
        return i % n, float(b) ** i

    return SchedulePlan(
        problem_count=n,
        generator=gen,
        interruptible=False,
        tag=PlanTag(kind="exponential", base=float(b)),
    )


def optimal_base_schedule(n: int) -> float:
    """The base minimizing the worst-case acceleration ratio of the
    round-robin exponential schedule on n problems."""
    if n < 1:
        raise ValueError(f"need at least 1 problem, got {n}")
    return (n + 1) / n


def make_pseudo_exponential_schedule(n: int, b: float, r: int) -> SchedulePlan:
    """Exponential round-robin where each (problem, length) pair is run
    r times in a row before advancing.

    Job i belongs to phase i // r; the phase sets both the problem
    (phase mod n) and the length (b^phase).
    """
    if n < 1:
        raise ValueError(f"need at least 1 problem, got {n}")
    _require_base(b)
    if r < 1:
        raise ValueError(f"repeat count must be >= 1, got {r}")

    def gen(i: int) -> tuple[int, float]:
        phase = i // r
        return phase % n, float(b) ** phase

    return SchedulePlan(
        problem_count=n,
        generator=gen,
        interruptible=False,
        tag=PlanTag(kind="pseudo", base=float(b), redundancy=r),
    )


def make_geometric_rr_schedule(n: int, b: float) -> SchedulePlan:
    """Interruptible round-robin with phase-doubling lengths: phase p
    runs each of the n problems once for b^p time units."""
    if n < 1:
        raise ValueError(f"need at least 1 problem, got {n}")
    _require_base(b)

    def gen(i: int) -> tuple[int, float]:
        phase = i // n
        return i % n, float(b) ** phase

    return SchedulePlan(
        problem_count=n,
        generator=gen,
        interruptible=True,
        tag=PlanTag(kind="geometric-rr", base=float(b)),
    )


def make_randomized_schedule(n: int, b: float, seed: int = 0) -> SchedulePlan:
    """Randomized exponential round-robin: a uniform phase offset
    epsilon in [0, 1) stretches every length to b^(i + epsilon), and a
    uniform random permutation fixes which problem each residue class
    mod n serves.

    The randomness is drawn once at construction from a counter-based
    generator, so the returned plan is deterministic given the seed.
    """
    if n < 1:
        raise ValueError(f"need at least 1 problem, got {n}")
    _require_base(b)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    permutation = tuple(int(x) for x in rng.permutation(n))
    epsilon = float(rng.random())
    return make_randomized_schedule_explicit(n, b, permutation, epsilon)


def make_randomized_schedule_explicit(
    n: int, b: float, permutation: Sequence[int], epsilon: float
) -> SchedulePlan:
    """The randomized round-robin plan with its random choices pinned,
    for reproducible evaluation and testing."""
    if n < 1:
        raise ValueError(f"need at least 1 problem, got {n}")
    _require_base(b)
    perm = tuple(int(x) for x in permutation)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"permutation must rearrange 0..{n - 1}, got {perm}")
    if not (0 <= epsilon < 1):
        raise ValueError(f"epsilon must lie in [0, 1), got {epsilon}")

    def gen(i: int) -> tuple[int, float]:
        return perm[i % n], float(b) ** (i + epsilon)

    return SchedulePlan(
        problem_count=n,
        generator=gen,
        interruptible=False,
        tag=PlanTag(
            kind="randomized", base=float(b), epsilon=epsilon, permutation=perm
        ),
    )


def make_custom_search(
    ray_count: int,
    generator: Callable[[int], Excursion],
    cost_model: CostModel = CostModel.STANDARD,
    traversals: int = 1,
) -> SearchPlan:
    """Wrap an arbitrary excursion generator as an untagged plan."""
    return SearchPlan(
        ray_count=ray_count,
        generator=generator,
        cost_model=cost_model,
        tag=PlanTag(kind="custom"),
        traversals=traversals,
    )


def make_custom_schedule(
    problem_count: int,
    generator: Callable[[int], tuple[int, float]],
    interruptible: bool = False,
) -> SchedulePlan:
    """Wrap an arbitrary job generator as an untagged plan."""
    return SchedulePlan(
        problem_count=problem_count,
        generator=generator,
        interruptible=interruptible,
        tag=PlanTag(kind="custom"),
    )
