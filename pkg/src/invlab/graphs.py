"""Oriented graphs on vertices 0..n-1 with inversion and push primitives.

Arcs are stored as per-vertex out-neighbour bitmasks; Python integers double
as unbounded bitsets, so the same representation gives O(1) arc flips at
every order.  Graph values are immutable and all operations are pure: they
return new graphs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CapacityError, InputError, ModeError

EXACT = "eq"
AT_MOST = "leq"

FAS_EXACT_DEFAULT_LIMIT = 20


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _bits(mask: int) -> Iterator[int]:
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


@dataclass(frozen=True)
class OrientedGraph:
    """Digon-free digraph; ``out[v]`` is the bitmask of heads of arcs leaving v."""

    n: int
    out: tuple[int, ...]

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "OrientedGraph":
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        out = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at {u}")
            if out[v] >> u & 1:
                raise InputError(f"digon between {u} and {v}")
            out[u] |= 1 << v
        return cls(n, tuple(out))

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.out[u])]

    @property
    def arc_count(self) -> int:
        return sum(m.bit_count() for m in self.out)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def out_degree(self, v: int) -> int:
        return self.out[v].bit_count()

    def out_degrees(self) -> list[int]:
        return [m.bit_count() for m in self.out]

    def in_masks(self) -> list[int]:
        ins = [0] * self.n
        for u in range(self.n):
            for v in _bits(self.out[u]):
                ins[v] |= 1 << u
        return ins

    def underlying_masks(self) -> list[int]:
        und = list(self.out)
        for u in range(self.n):
            for v in _bits(self.out[u]):
                und[v] |= 1 << u
        return und

    def underlying_pairs(self) -> list[tuple[int, int]]:
        """Edges of the underlying undirected graph, lexicographically sorted."""
        return sorted((min(u, v), max(u, v)) for u, v in self.arcs())


@dataclass(frozen=True)
class InversionFamily:
    """Ordered list of vertex subsets together with its size mode.

    ``mode`` is "eq" (every set has size exactly p) or "leq" (size at most p).
    Sets may repeat; application order never matters.
    """

    sets: tuple[frozenset[int], ...]
    p: int
    mode: str = EXACT

    def validate(self, n: int) -> None:
        if self.mode not in (EXACT, AT_MOST):
            raise InputError(f"unknown family mode {self.mode!r}")
        if self.p < 0:
            raise InputError("p must be nonnegative")
        for X in self.sets:
            if any(not (0 <= v < n) for v in X):
                raise InputError(f"set {sorted(X)} out of range for n={n}")
            if self.mode == EXACT and len(X) != self.p:
                raise ModeError(f"set of size {len(X)} in (={self.p})-family")
            if self.mode == AT_MOST and len(X) > self.p:
                raise ModeError(f"set of size {len(X)} in (<={self.p})-family")

    def __len__(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class FasResult:
    size: int
    arcs: tuple[tuple[int, int], ...]
    ordering: tuple[int, ...]
    exact: bool


def invert(D: OrientedGraph, X: Iterable[int]) -> OrientedGraph:
    """Reverse every arc with both endpoints in X."""
    xs = set(X)
    if any(not (0 <= v < D.n) for v in xs):
        raise InputError(f"inversion set {sorted(xs)} out of range for n={D.n}")
    xm = _mask(xs)
    out = list(D.out)
    for u in xs:
        hit = D.out[u] & xm
        out[u] ^= hit
        for w in _bits(hit):
            out[w] |= 1 << u
    return OrientedGraph(D.n, tuple(out))


def apply_family(D: OrientedGraph, family: InversionFamily) -> OrientedGraph:
    """Invert all member sets; an arc flips iff an odd number of sets contain both ends."""
    family.validate(D.n)
    flip = [0] * D.n
    for X in family.sets:
        xm = _mask(X)
        for u in X:
            flip[u] ^= xm & ~(1 << u)
    out = [0] * D.n
    for u in range(D.n):
        keep = D.out[u] & ~flip[u]
        out[u] |= keep
        for v in _bits(D.out[u] & flip[u]):
            out[v] |= 1 << u
    return OrientedGraph(D.n, tuple(out))


def push(D: OrientedGraph, X: Iterable[int]) -> OrientedGraph:
    """Reverse every arc with exactly one endpoint in X."""
    xs = set(X)
    if any(not (0 <= v < D.n) for v in xs):
        raise InputError(f"push set {sorted(xs)} out of range for n={D.n}")
    xm = _mask(xs)
    res = [0] * D.n
    flipped = []
    for u in range(D.n):
        boundary = D.out[u] & (~xm if u in xs else xm)
        res[u] |= D.out[u] ^ boundary
        flipped.append(boundary)
    for u in range(D.n):
        for v in _bits(flipped[u]):
            res[v] |= 1 << u
    return OrientedGraph(D.n, tuple(res))


def reverse_all(D: OrientedGraph) -> OrientedGraph:
    out = [0] * D.n
    for u, v in D.arcs():
        out[v] |= 1 << u
    return OrientedGraph(D.n, tuple(out))


def topological_order(D: OrientedGraph) -> Optional[list[int]]:
    """Smallest-index-first Kahn ordering, or None if D has a directed cycle."""
    indeg = [0] * D.n
    for u in range(D.n):
        for v in _bits(D.out[u]):
            indeg[v] += 1
    heap = [v for v in range(D.n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in _bits(D.out[u]):
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    return order if len(order) == D.n else None


def find_cycle(D: OrientedGraph) -> Optional[list[int]]:
    """A directed cycle as a vertex list, or None when D is acyclic."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * D.n
    stack: list[int] = []
    on_stack = [False] * D.n

    def dfs(root: int) -> Optional[list[int]]:
        iters = [(root, _bits(D.out[root]))]
        color[root] = GRAY
        stack.append(root)
        on_stack[root] = True
        while iters:
            u, it = iters[-1]
            advanced = False
            for v in it:
                if color[v] == WHITE:
                    color[v] = GRAY
                    stack.append(v)
                    on_stack[v] = True
                    iters.append((v, _bits(D.out[v])))
                    advanced = True
                    break
                if on_stack[v]:
                    return stack[stack.index(v):]
            if not advanced:
                color[u] = BLACK
                on_stack[u] = False
                stack.pop()
                iters.pop()
        return None

    for s in range(D.n):
        if color[s] == WHITE:
            cyc = dfs(s)
            if cyc is not None:
                return cyc
    return None


def is_acyclic(D: OrientedGraph) -> bool:
    return topological_order(D) is not None


def is_tournament(D: OrientedGraph) -> bool:
    und = D.underlying_masks()
    full = (1 << D.n) - 1
    return all(und[v] == full & ~(1 << v) for v in range(D.n))


def backward_arcs(D: OrientedGraph, ordering: Sequence[int]) -> list[tuple[int, int]]:
    pos = {v: i for i, v in enumerate(ordering)}
    return [(u, v) for u, v in D.arcs() if pos[u] > pos[v]]


def out_even_count(D: OrientedGraph) -> int:
    """Number of vertices with even out-degree."""
    return sum(1 for m in D.out if m.bit_count() % 2 == 0)


def out_parity_profile(D: OrientedGraph) -> tuple[int, ...]:
    return tuple(m.bit_count() & 1 for m in D.out)


def fas_exact(D: OrientedGraph, limit: int = FAS_EXACT_DEFAULT_LIMIT) -> FasResult:
    """Minimum feedback arc set by dynamic programming over vertex subsets.

    Exponential in n; refuses above `limit` (use fas_heuristic there instead).
    The returned arcs are the backward arcs of the returned ordering.
    """
    n = D.n
    if n > limit:
        raise CapacityError(
            f"fas_exact limited to {limit} vertices (got {n}); use fas_heuristic"
        )
    if n == 0:
        return FasResult(0, (), (), True)
    full = (1 << n) - 1
    size = 1 << n
    in_masks = D.in_masks()
    INF = 255
    dp = bytearray([INF]) * size
    choice = bytearray(size)
    dp[0] = 0
    for S in range(size):
        base = dp[S]
        if base == INF:
            continue
        rest = full ^ S
        free = rest
        while free:
            b = free & -free
            v = b.bit_length() - 1
            free ^= b
            cost = base + (in_masks[v] & rest).bit_count()
            t = S | b
            if cost < dp[t]:
                dp[t] = cost
                choice[t] = v
    order_rev = []
    S = full
    while S:
        v = choice[S]
        order_rev.append(v)
        S ^= 1 << v
    ordering = tuple(reversed(order_rev))
    arcs = tuple(backward_arcs(D, ordering))
    assert len(arcs) == dp[full]
    return FasResult(dp[full], arcs, ordering, True)


def _insertion_pass(D: OrientedGraph, order: list[int]) -> bool:
    """One best-insertion sweep; returns True when some move improved the count."""
    improved = False
    for v in range(D.n):
        i = order.index(v)
        others = order[:i] + order[i + 1:]
        # b(j) = backward arcs at v when v occupies slot j among the others
        b = sum(1 for w in others if D.has_arc(w, v))
        best_j, best_b, cur = 0, b, None
        for j in range(len(others) + 1):
            if j == i:
                cur = b
            if b < best_b:
                best_b, best_j = b, j
            if j < len(others):
                w = others[j]
                b += (1 if D.has_arc(v, w) else 0) - (1 if D.has_arc(w, v) else 0)
        assert cur is not None
        if best_b < cur:
            others.insert(best_j, v)
            order[:] = others
            improved = True
    return improved


def fas_heuristic(D: OrientedGraph) -> FasResult:
    """Feedback arc set from ordering local search (single-vertex moves, which
    subsume adjacent swaps, iterated to a fixpoint).  No optimality claim."""
    order = sorted(range(D.n), key=lambda v: (-D.out_degree(v), v))
    while _insertion_pass(D, order):
        pass
    arcs = tuple(backward_arcs(D, order))
    return FasResult(len(arcs), arcs, tuple(order), False)


def delete_vertex(D: OrientedGraph, z: int) -> OrientedGraph:
    """Remove vertex z; vertices above z shift down by one."""
    if not 0 <= z < D.n:
        raise InputError(f"vertex {z} out of range")
    relabel = lambda v: v - (v > z)
    arcs = [(relabel(u), relabel(v)) for u, v in D.arcs() if u != z and v != z]
    return OrientedGraph.from_arcs(D.n - 1, arcs)


def induced_subgraph(D: OrientedGraph, vertices: Sequence[int]) -> OrientedGraph:
    pos = {v: i for i, v in enumerate(vertices)}
    arcs = [(pos[u], pos[v]) for u, v in D.arcs() if u in pos and v in pos]
    return OrientedGraph.from_arcs(len(vertices), arcs)


def complete_low_to_high(D: OrientedGraph) -> OrientedGraph:
    """Extend to a tournament by orienting every missing pair low -> high."""
    und = D.underlying_masks()
    out = list(D.out)
    for u in range(D.n):
        for v in range(u + 1, D.n):
            if not (und[u] >> v & 1):
                out[u] |= 1 << v
    return OrientedGraph(D.n, tuple(out))


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph as symmetric adjacency bitmasks."""

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "UndirectedGraph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise InputError(f"bad edge ({u},{v}) for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in _bits(self.adj[u]):
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
            comps.append(sorted(comp))
        return comps


def complement_of_underlying(D: OrientedGraph) -> UndirectedGraph:
    und = D.underlying_masks()
    full = (1 << D.n) - 1
    adj = tuple(full & ~(und[v] | 1 << v) for v in range(D.n))
    return UndirectedGraph(D.n, adj)
