"""Tournament kernelization for bounded/prescribed-size inversion questions.

One reduction step either recognises a no-instance through a feedback-arc-set
threshold or deletes a vertex from a long interval untouched by the feedback
arcs; the kernel loop repeats the step until the tournament is small.  Both
questions ("k sets of size exactly p" and "of size at most p") are preserved
by every step, so no mode parameter is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb
from typing import Optional

from .errors import InputError
from .graphs import (
    FAS_EXACT_DEFAULT_LIMIT,
    FasResult,
    OrientedGraph,
    delete_vertex,
    fas_exact,
    fas_heuristic,
    invert,
    is_acyclic,
    is_tournament,
    topological_order,
)


@dataclass(frozen=True)
class KernelConfig:
    p: int
    k: int
    eps: Fraction = Fraction(1, 2)
    fas_mode: str = "auto"  # "exact" | "heuristic" | "auto" (exact when small)
    fas_exact_limit: int = FAS_EXACT_DEFAULT_LIMIT

    def __post_init__(self) -> None:
        if self.p < 0 or self.k < 0:
            raise InputError("p and k must be nonnegative")
        if self.eps <= 0:
            raise InputError("eps must be positive")
        if self.fas_mode not in ("exact", "heuristic", "auto"):
            raise InputError(f"unknown fas mode {self.fas_mode!r}")

    def threshold(self) -> Fraction:
        """Minimum order at which one reduction step applies."""
        return (2 * (1 + self.eps) * self.k * comb(self.p, 2) + 1) * (
            self.p * self.k + 2
        )

    def fas_bound(self) -> Fraction:
        """Feedback-arc-set size above which the instance is a no-instance."""
        return (1 + self.eps) * self.k * comb(self.p, 2)


@dataclass(frozen=True)
class StepOutcome:
    kind: str  # "noop" | "no-instance" | "deleted"
    tournament: OrientedGraph
    fas_size: Optional[int] = None
    fas_exact: Optional[bool] = None
    interval: Optional[tuple[int, int]] = None
    deleted_vertex: Optional[int] = None


@dataclass(frozen=True)
class KernelResult:
    tournament: OrientedGraph
    solved: bool
    answer: Optional[bool]
    steps: tuple[StepOutcome, ...]


def canonical_no_instance(p: int, k: int) -> OrientedGraph:
    """p*k+1 vertex-disjoint directed triangles, remaining pairs low -> high.

    Any family of at most k sets of size at most p misses a triangle entirely,
    so the tournament cannot be decycled within the budget.
    """
    rounds = p * k + 1
    n = 3 * rounds
    arcs = []
    for t in range(rounds):
        a, b, c = 3 * t, 3 * t + 1, 3 * t + 2
        arcs += [(a, b), (b, c), (c, a)]
    present = {frozenset(a) for a in arcs}
    for u in range(n):
        for v in range(u + 1, n):
            if frozenset({u, v}) not in present:
                arcs.append((u, v))
    return OrientedGraph.from_arcs(n, arcs)


def _fas_for(T: OrientedGraph, cfg: KernelConfig) -> FasResult:
    if cfg.fas_mode == "exact" or (
        cfg.fas_mode == "auto" and T.n <= cfg.fas_exact_limit
    ):
        return fas_exact(T, cfg.fas_exact_limit)
    return fas_heuristic(T)


def _arc_minimal(T: OrientedGraph, arcs: tuple[tuple[int, int], ...]) -> list[tuple[int, int]]:
    """Drop arcs whose removal from the feedback set keeps it feasible."""
    current = list(arcs)
    changed = True
    while changed:
        changed = False
        for a in list(current):
            rest = [x for x in current if x != a]
            flipped = T
            for u, v in rest:
                flipped = invert(flipped, {u, v})
            if is_acyclic(flipped):
                current = rest
                changed = True
                break
    return current


def delvertex_step(T: OrientedGraph, cfg: KernelConfig) -> StepOutcome:
    """One kernelization step; a no-op when T is below the applicability bound."""
    if not is_tournament(T):
        raise InputError("kernelization needs a tournament")
    if T.n < cfg.threshold():
        return StepOutcome("noop", T)
    fas = _fas_for(T, cfg)
    if fas.size > cfg.fas_bound():
        return StepOutcome(
            "no-instance",
            canonical_no_instance(cfg.p, cfg.k),
            fas_size=fas.size,
            fas_exact=fas.exact,
        )
    minimal = _arc_minimal(T, fas.arcs)
    stripped = T
    for u, v in minimal:
        stripped = invert(stripped, {u, v})
    sigma = topological_order(stripped)
    assert sigma is not None
    pos = {v: i for i, v in enumerate(sigma)}
    assert all(pos[b] < pos[a] for a, b in minimal)
    endpoints = {v for arc in minimal for v in arc}
    span = cfg.p * cfg.k + 2
    start = None
    run = 0
    for i, v in enumerate(sigma):
        if v in endpoints:
            run = 0
            continue
        run += 1
        if run >= span:
            start = i - run + 1
            break
    if start is None:
        raise InputError("no feedback-free interval of the required length")
    z = sigma[start]
    return StepOutcome(
        "deleted",
        delete_vertex(T, z),
        fas_size=len(minimal),
        fas_exact=fas.exact,
        interval=(start, start + span),
        deleted_vertex=z,
    )


def kernelize(T: OrientedGraph, cfg: KernelConfig) -> KernelResult:
    """Shrink T below the step threshold while preserving both inversion
    questions at (p, k); degenerate parameters are answered outright and
    reported through an equivalent marker instance."""
    if not is_tournament(T):
        raise InputError("kernelization needs a tournament")
    if cfg.p <= 1 or cfg.k == 0:
        # k = 0 leaves no moves and p <= 1 only no-op inversions, so the
        # answer is plain acyclicity
        answer = is_acyclic(T)
        marker = (
            OrientedGraph.from_arcs(1, [])
            if answer
            else canonical_no_instance(max(cfg.p, 1), max(cfg.k, 1))
        )
        return KernelResult(marker, True, answer, ())
    step_cfg = replace(cfg, eps=cfg.eps / 2)
    loop_threshold = step_cfg.threshold()
    steps: list[StepOutcome] = []
    current = T
    while current.n > loop_threshold:
        outcome = delvertex_step(current, step_cfg)
        steps.append(outcome)
        if outcome.kind == "noop":
            break
        current = outcome.tournament
        if outcome.kind == "no-instance":
            break
    return KernelResult(current, False, None, tuple(steps))
