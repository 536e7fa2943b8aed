"""Constructive synthesis of decycling (=p)-families.

Four primitive gadgets reverse a prescribed edge pattern and nothing else;
the pipelines compose them against a feedback arc set.  Helper vertices are
always the lowest-index vertices outside the forbidden set, so every output
is deterministic.  All pipelines require even p; no bounded construction can
exist for odd p.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import CapacityError, InputError, ModeError, UnsupportedRangeError
from .graphs import (
    AT_MOST,
    EXACT,
    FAS_EXACT_DEFAULT_LIMIT,
    FasResult,
    InversionFamily,
    OrientedGraph,
    apply_family,
    fas_exact,
    fas_heuristic,
    induced_subgraph,
    invert,
    is_acyclic,
)

PAIRWISE = "pairwise"
CYCLE_FIRST = "cycle-first"


@dataclass(frozen=True)
class GadgetPlan:
    kind: str
    anchors: tuple[int, ...]
    helper: tuple[int, ...]
    sets: tuple[frozenset[int], ...]


def _helper_set(n: int, size: int, forbidden: Iterable[int]) -> tuple[int, ...]:
    bad = set(forbidden)
    helper = [v for v in range(n) if v not in bad][:size]
    if len(helper) < size:
        raise CapacityError(
            f"need {size} helper vertices outside {sorted(bad)} but only "
            f"{len(helper)} exist (n={n})"
        )
    return tuple(helper)


def _check_anchors(n: int, anchors: Sequence[int]) -> None:
    if len(set(anchors)) != len(anchors):
        raise InputError(f"anchors {anchors} must be distinct")
    if any(not (0 <= v < n) for v in anchors):
        raise InputError(f"anchors {anchors} out of range for n={n}")


def gadget_cycle4(
    D: OrientedGraph, x0: int, x1: int, x2: int, x3: int, p: int
) -> GadgetPlan:
    """Four (=p)-inversions reversing exactly the pattern x0x1, x1x2, x2x3, x3x0.

    One shared helper set of p-2 outside vertices rides along in all four
    inversions, so every other pair is flipped an even number of times.
    """
    anchors = (x0, x1, x2, x3)
    _check_anchors(D.n, anchors)
    if p < 2:
        raise InputError("p must be at least 2")
    helper = _helper_set(D.n, p - 2, anchors)
    sets = tuple(
        frozenset(helper) | {anchors[i], anchors[(i + 1) % 4]} for i in range(4)
    )
    return GadgetPlan("cycle4", anchors, helper, sets)


def gadget_adjacent_pair(
    D: OrientedGraph, u: int, v1: int, v2: int, p: int
) -> GadgetPlan:
    """2p-2 (=p)-inversions reversing exactly the adjacent pair uv1, uv2 (p even).

    Two direct inversions flip the targets and the helper biclique
    K_{ {v1,v2}, X }; consecutive helper pairs (x_2i, x_2i+1) then form
    4-cycles v1, x_2i, v2, x_2i+1 that cancel the biclique again.
    """
    anchors = (u, v1, v2)
    _check_anchors(D.n, anchors)
    if p < 2 or p % 2 == 1:
        raise ModeError(f"adjacent-pair gadget needs even p >= 2 (got {p})")
    helper = _helper_set(D.n, p - 2, anchors)
    sets = [frozenset(helper) | {u, v1}, frozenset(helper) | {u, v2}]
    for i in range(0, p - 2, 2):
        a, b = helper[i], helper[i + 1]
        sets.extend(gadget_cycle4(D, v1, a, v2, b, p).sets)
    assert len(sets) == 2 * p - 2
    return GadgetPlan("adjacent-pair", anchors, helper, tuple(sets))


def gadget_nonadjacent_pair(
    D: OrientedGraph, u1: int, v1: int, u2: int, v2: int, p: int
) -> GadgetPlan:
    """4p-4 (=p)-inversions reversing exactly the disjoint pair u1v1, u2v2
    (p even): u1v1 with the bridge u1u2, then the bridge with u2v2."""
    anchors = (u1, v1, u2, v2)
    _check_anchors(D.n, anchors)
    if p < 2 or p % 2 == 1:
        raise ModeError(f"nonadjacent-pair gadget needs even p >= 2 (got {p})")
    first = gadget_adjacent_pair(D, u1, v1, u2, p)
    second = gadget_adjacent_pair(D, u2, u1, v2, p)
    sets = first.sets + second.sets
    assert len(sets) == 4 * p - 4
    return GadgetPlan("nonadjacent-pair", anchors, first.helper, sets)


NARROW = "narrow"
WIDE = "wide"


def gadget_even_cycle(
    D: OrientedGraph, cycle: Sequence[int], p: int, variant: str = NARROW
) -> GadgetPlan:
    """Reverse exactly the edge pattern of an even cycle c0..c_{2l-1}.

    Narrow walks the cycle with one shared helper set (2l inversions, needs
    n >= p + 2l - 2); Wide covers it by l chorded 4-cycles (4l inversions,
    needs only n >= p + 2 but p >= 3).
    """
    cyc = tuple(cycle)
    _check_anchors(D.n, cyc)
    if len(cyc) % 2 or len(cyc) < 4:
        raise InputError(f"even cycle needs 2l >= 4 vertices (got {len(cyc)})")
    two_l = len(cyc)
    if variant == NARROW:
        if D.n < p + two_l - 2:
            raise ModeError(
                f"narrow even-cycle gadget needs n >= p + 2l - 2 "
                f"(n={D.n}, p={p}, 2l={two_l}); fall back to the wide variant"
            )
        helper = _helper_set(D.n, p - 2, cyc)
        sets = tuple(
            frozenset(helper) | {cyc[i], cyc[(i + 1) % two_l]} for i in range(two_l)
        )
        return GadgetPlan("even-cycle-narrow", cyc, helper, sets)
    if variant != WIDE:
        raise InputError(f"unknown even-cycle variant {variant!r}")
    if p < 3:
        raise ModeError(f"wide even-cycle gadget needs p >= 3 (got {p})")
    half = two_l // 2
    sets = []
    for i in range(half):
        quad = (cyc[i], cyc[(i + 1) % two_l], cyc[(i + half + 1) % two_l], cyc[(i + half) % two_l])
        sets.extend(gadget_cycle4(D, *quad, p).sets)
    assert len(sets) == 2 * two_l
    return GadgetPlan("even-cycle-wide", cyc, (), tuple(sets))


def _pair_of(arc: tuple[int, int]) -> tuple[int, int]:
    return (min(arc), max(arc))


def _greedy_even_cycles(
    pairs: set[tuple[int, int]]
) -> tuple[list[list[int]], set[tuple[int, int]]]:
    """Peel shortest even cycles out of an undirected edge set, greedily."""
    cycles = []
    remaining = set(pairs)
    while True:
        best: Optional[list[int]] = None
        adj: dict[int, set[int]] = {}
        for a, b in remaining:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        for a, b in sorted(remaining):
            # shortest a-b path avoiding the edge itself; odd length gives an even cycle
            prev = {a: a}
            frontier = [a]
            while frontier and b not in prev:
                nxt = []
                for x in frontier:
                    for y in sorted(adj.get(x, ())):
                        if (min(x, y), max(x, y)) == (a, b):
                            continue
                        if y not in prev:
                            prev[y] = x
                            nxt.append(y)
                frontier = nxt
            if b not in prev:
                continue
            path = [b]
            while path[-1] != a:
                path.append(prev[path[-1]])
            if len(path) % 2 == 0 and (best is None or len(path) < len(best)):
                best = path
        if best is None:
            return cycles, remaining
        cycles.append(best)
        for x, y in zip(best, best[1:] + best[:1]):
            remaining.discard((min(x, y), max(x, y)))


def reverse_arc_set(
    D: OrientedGraph,
    arcs: Iterable[tuple[int, int]],
    p: int,
    strategy: str = PAIRWISE,
    trace: Optional[list[GadgetPlan]] = None,
) -> InversionFamily:
    """A (=p)-family whose application flips exactly the given arcs of D.

    Pairwise sweeps the arcs two at a time; cycle-first peels even cycles out
    of their underlying edge set before pairing what is left.
    """
    if p % 2 == 1:
        raise ModeError(f"reverse_arc_set needs even p (got {p})")
    if D.n < p + 2:
        raise UnsupportedRangeError(f"need n >= p + 2 (got n={D.n}, p={p})")
    arc_list = sorted(set(arcs))
    if len(arc_list) % 2 == 1:
        raise InputError(f"arc set size {len(arc_list)} must be even")
    for u, v in arc_list:
        if not D.has_arc(u, v):
            raise InputError(f"({u},{v}) is not an arc of the graph")
    plans: list[GadgetPlan] = []
    pairs = {_pair_of(a) for a in arc_list}

    if strategy == CYCLE_FIRST:
        cycles, leftover = _greedy_even_cycles(pairs)
        for cyc in cycles:
            try:
                plans.append(gadget_even_cycle(D, cyc, p, NARROW))
            except ModeError:
                plans.append(gadget_even_cycle(D, cyc, p, WIDE))
        pairs = leftover
        # disjoint adjacent pairs at shared endpoints, then a leftover matching
        by_vertex: dict[int, list[tuple[int, int]]] = {}
        for e in sorted(pairs):
            by_vertex.setdefault(e[0], []).append(e)
            by_vertex.setdefault(e[1], []).append(e)
        used: set[tuple[int, int]] = set()
        for v in sorted(by_vertex):
            incident = [e for e in by_vertex[v] if e not in used]
            while len(incident) >= 2:
                e1, e2 = incident[0], incident[1]
                incident = incident[2:]
                used.update((e1, e2))
                w1 = e1[0] if e1[1] == v else e1[1]
                w2 = e2[0] if e2[1] == v else e2[1]
                plans.append(gadget_adjacent_pair(D, v, w1, w2, p))
        pairs -= used
    elif strategy != PAIRWISE:
        raise InputError(f"unknown strategy {strategy!r}")

    rest = sorted(pairs)
    assert len(rest) % 2 == 0
    for e1, e2 in zip(rest[::2], rest[1::2]):
        shared = set(e1) & set(e2)
        if shared:
            v = shared.pop()
            w1 = e1[0] if e1[1] == v else e1[1]
            w2 = e2[0] if e2[1] == v else e2[1]
            plans.append(gadget_adjacent_pair(D, v, w1, w2, p))
        else:
            plans.append(gadget_nonadjacent_pair(D, e1[0], e1[1], e2[0], e2[1], p))

    if trace is not None:
        trace.extend(plans)
    sets = tuple(s for plan in plans for s in plan.sets)
    family = InversionFamily(sets, p, EXACT)
    return family


def _fas_for(D: OrientedGraph, exact_limit: int) -> FasResult:
    if D.n <= exact_limit:
        return fas_exact(D, exact_limit)
    return fas_heuristic(D)


def _safe_extra_arc(
    D1: OrientedGraph, prefer_not: set[tuple[int, int]]
) -> tuple[int, int]:
    """Lexicographically smallest arc of the acyclic D1 whose reversal keeps it
    acyclic, preferring arcs outside `prefer_not`."""
    candidates = sorted(D1.arcs(), key=lambda a: (a in prefer_not, a))
    for u, v in candidates:
        if is_acyclic(invert(D1, {u, v})):
            return (u, v)
    raise InputError("acyclic graph with no safely reversible arc")


def _check_pipeline_args(D: OrientedGraph, p: int) -> None:
    if p % 2 == 1 or p < 4:
        raise ModeError(f"decycling pipelines need even p >= 4 (got {p})")
    if D.n < p + 2:
        raise UnsupportedRangeError(f"need n >= p + 2 (got n={D.n}, p={p})")


def _minimized(D: OrientedGraph, family: InversionFamily) -> InversionFamily:
    """Shrink a pipeline output to an equivalent subfamily of at most |A(D)|
    members; this is what keeps every emitted count under the arc bound."""
    from .pairspace import minimize_family

    return minimize_family(D, family)


def decycle_via_fas(
    D: OrientedGraph,
    p: int,
    strategy: str = PAIRWISE,
    fas: Optional[FasResult] = None,
    exact_limit: int = FAS_EXACT_DEFAULT_LIMIT,
    trace: Optional[list[GadgetPlan]] = None,
) -> InversionFamily:
    """Decycle D with at most (2p-2)(fas+1) (=p)-inversions, fas taken from the
    feedback arc set actually used."""
    _check_pipeline_args(D, p)
    if is_acyclic(D):
        return InversionFamily((), p, EXACT)
    chosen = fas if fas is not None else _fas_for(D, exact_limit)
    diff = set(chosen.arcs)
    if len(diff) % 2 == 1:
        D1 = apply_family(
            D, InversionFamily(tuple(frozenset(a) for a in diff), 2, AT_MOST)
        )
        extra = _safe_extra_arc(D1, prefer_not={(v, u) for u, v in diff})
        if extra in {(v, u) for u, v in diff}:
            diff.discard((extra[1], extra[0]))
        else:
            diff.add(extra)
    family = reverse_arc_set(D, diff, p, strategy, trace)
    assert len(family) <= (2 * p - 2) * (chosen.size + 1)
    family = _minimized(D, family)
    assert is_acyclic(apply_family(D, family))
    return family


class GreedyReduction(NamedTuple):
    family: InversionFamily
    reduced: OrientedGraph
    ordering: tuple[int, ...]


def greedy_reduce(
    D: OrientedGraph,
    p: int,
    ordering: Optional[Sequence[int]] = None,
    exact_limit: int = FAS_EXACT_DEFAULT_LIMIT,
) -> GreedyReduction:
    """Sweep the ordering, absorbing batches of p-1 backward arcs per inversion.

    Uses at most |A|/(p-1) inversions and leaves a graph whose returned
    ordering certifies fas <= (p-2)n - 3p^2/4 + 7p/4: each swept vertex keeps
    at most p-2 backward in-arcs and the final p-vertex block is reordered
    optimally.
    """
    if p < 2:
        raise InputError("p must be at least 2")
    n = D.n
    if n < p:
        raise UnsupportedRangeError(f"need n >= p (got n={n}, p={p})")
    order = list(ordering) if ordering is not None else list(range(n))
    if sorted(order) != list(range(n)):
        raise InputError("ordering must be a permutation of the vertices")
    current = D
    sets: list[frozenset[int]] = []
    pos = {v: i for i, v in enumerate(order)}
    for k in range(n - p):
        vk = order[k]
        tails = sorted(
            (u for u, v in current.arcs() if v == vk and pos[u] > k),
            key=lambda u: pos[u],
        )
        batches = len(tails) // (p - 1)
        for i in range(batches):
            X = frozenset([vk] + tails[i * (p - 1):(i + 1) * (p - 1)])
            sets.append(X)
            current = invert(current, X)
    tail_vertices = order[n - p:]
    tail_fas = (
        fas_exact(induced_subgraph(current, tail_vertices), exact_limit)
        if p <= exact_limit
        else fas_heuristic(induced_subgraph(current, tail_vertices))
    )
    tail_order = [tail_vertices[i] for i in tail_fas.ordering]
    cert = tuple(order[: n - p] + tail_order)
    family = InversionFamily(tuple(sets), p, EXACT)
    assert len(family) <= D.arc_count // (p - 1)
    return GreedyReduction(family, current, cert)


def decycle_dense(
    D: OrientedGraph,
    p: int,
    strategy: str = PAIRWISE,
    exact_limit: int = FAS_EXACT_DEFAULT_LIMIT,
    trace: Optional[list[GadgetPlan]] = None,
) -> InversionFamily:
    """Greedy arc-absorption sweep followed by the fas pipeline on what is left."""
    _check_pipeline_args(D, p)
    reduction = greedy_reduce(D, p, exact_limit=exact_limit)
    rest = decycle_via_fas(
        reduction.reduced, p, strategy, exact_limit=exact_limit, trace=trace
    )
    family = _minimized(D, InversionFamily(reduction.family.sets + rest.sets, p, EXACT))
    assert is_acyclic(apply_family(D, family))
    return family


@dataclass(frozen=True)
class PeelCaps:
    max_vertices: int = 64
    max_candidates: int = 200_000


def _find_biclique(
    adj: dict[int, set[int]], s: int, t: int, caps: PeelCaps
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """First K_{s,t} (lexicographic side-B enumeration with pruning) within caps."""
    budget = caps.max_candidates
    verts = sorted(v for v, nb in adj.items() if len(nb) >= t)

    def extend(chosen: list[int], common: set[int], start: int) -> Optional[tuple]:
        nonlocal budget
        if budget <= 0:
            return None
        budget -= 1
        if len(chosen) == s:
            rest = sorted(common - set(chosen))
            if len(rest) >= t:
                return tuple(chosen), tuple(rest[:t])
            return None
        for i in range(start, len(verts)):
            v = verts[i]
            new_common = common & adj[v] if chosen else set(adj[v])
            if len(new_common - set(chosen) - {v}) < t:
                continue
            found = extend(chosen + [v], new_common, i + 1)
            if found:
                return found
            if budget <= 0:
                return None
        return None

    return extend([], set(), 0)


def biclique_peel(
    n: int,
    edges: Iterable[tuple[int, int]],
    p: int,
    caps: PeelCaps = PeelCaps(),
) -> tuple[InversionFamily, set[tuple[int, int]]]:
    """Peel complete bipartite K_{s,t} blocks (s = 2*floor(p/2), t = 2*ceil(p/2))
    out of an edge set, four (=p)-inversions per block; returns the family and
    the residual edges once no further block is found within the caps."""
    if p < 2:
        raise InputError("p must be at least 2")
    if n > caps.max_vertices:
        raise CapacityError(f"{n} vertices exceed peel cap {caps.max_vertices}")
    current = {_pair_of(e) for e in edges}
    for a, b in current:
        if not (0 <= a < n and 0 <= b < n):
            raise InputError(f"edge ({a},{b}) out of range for n={n}")
    s, t = 2 * (p // 2), 2 * ((p + 1) // 2)
    half_b, half_c = p // 2, (p + 1) // 2
    sets: list[frozenset[int]] = []
    while True:
        adj: dict[int, set[int]] = {}
        for a, b in current:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        found = _find_biclique(adj, s, t, caps)
        if found is None:
            return InversionFamily(tuple(sets), p, EXACT), current
        B, C = found
        b1, b2 = B[:half_b], B[half_b:]
        c1, c2 = C[:half_c], C[half_c:]
        for side_b, side_c in ((b1, c1), (b1, c2), (b2, c1), (b2, c2)):
            sets.append(frozenset(side_b) | frozenset(side_c))
        for x in B:
            for y in C:
                current.discard(_pair_of((x, y)))


def decycle_opt_dense(
    D: OrientedGraph,
    p: int,
    caps: PeelCaps = PeelCaps(),
    exact_limit: int = FAS_EXACT_DEFAULT_LIMIT,
    trace: Optional[list[GadgetPlan]] = None,
) -> InversionFamily:
    """Peel biclique blocks out of a minimum feedback arc set, then finish with
    the fas pipeline on the perturbed graph."""
    _check_pipeline_args(D, p)
    if is_acyclic(D):
        return InversionFamily((), p, EXACT)
    fas = _fas_for(D, exact_limit)
    peel, _residual = biclique_peel(D.n, fas.arcs, p, caps)
    D1 = apply_family(D, peel)
    rest = decycle_via_fas(D1, p, PAIRWISE, exact_limit=exact_limit, trace=trace)
    family = _minimized(D, InversionFamily(peel.sets + rest.sets, p, EXACT))
    assert is_acyclic(apply_family(D, family))
    return family


@dataclass(frozen=True)
class FamilyReport:
    sizes_ok: bool
    acyclic: bool
    net_flip: tuple[tuple[int, int], ...]
    count: int


def verify_family(
    D: OrientedGraph, family: InversionFamily, p: int, mode: str = EXACT
) -> FamilyReport:
    """Check a family against a graph without mutating either."""
    for X in family.sets:
        if any(not (0 <= v < D.n) for v in X):
            raise InputError(f"set {sorted(X)} out of range for n={D.n}")
    if mode == EXACT:
        sizes_ok = all(len(X) == p for X in family.sets)
    elif mode == AT_MOST:
        sizes_ok = all(len(X) <= p for X in family.sets)
    else:
        raise InputError(f"unknown mode {mode!r}")
    result = apply_family(D, InversionFamily(family.sets, max(p, D.n), AT_MOST))
    flipped = tuple((u, v) for u, v in D.arcs() if result.has_arc(v, u))
    return FamilyReport(
        sizes_ok=sizes_ok,
        acyclic=is_acyclic(result),
        net_flip=flipped,
        count=len(family.sets),
    )
