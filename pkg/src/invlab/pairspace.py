"""F2 vector space over unordered vertex pairs.

Coordinates are fixed colexicographically: pair {i, j} with i < j sits at bit
index j*(j-1)//2 + i, so the order is (0,1), (0,2), (1,2), (0,3), ...  The
hex serialization writes the whole bit string as one little-endian integer in
this layout, zero-padded to ceil(C(n,2)/4) digits.  Every routine in this
module is pure.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .errors import CapacityError, InputError, UnsupportedRangeError
from .graphs import InversionFamily, OrientedGraph, is_tournament

EXACT = "eq"


def pair_index(i: int, j: int) -> int:
    if i == j:
        raise InputError("pair needs two distinct vertices")
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def incident_masks(n: int) -> tuple[int, ...]:
    """incident_masks(n)[v] has a 1 at every pair coordinate containing v."""
    masks = [0] * n
    for j in range(n):
        for i in range(j):
            b = 1 << pair_index(i, j)
            masks[i] |= b
            masks[j] |= b
    return tuple(masks)


def full_mask(n: int) -> int:
    return (1 << pair_count(n)) - 1


@dataclass(frozen=True)
class PairVector:
    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> pair_count(self.n):
            raise InputError("bits outside C(n,2) coordinates")

    def __xor__(self, other: "PairVector") -> "PairVector":
        if self.n != other.n:
            raise InputError("XOR of PairVectors with different n")
        return PairVector(self.n, self.bits ^ other.bits)

    def get(self, i: int, j: int) -> int:
        return self.bits >> pair_index(i, j) & 1

    def popcount(self) -> int:
        return self.bits.bit_count()

    def pairs(self) -> list[tuple[int, int]]:
        out = []
        for j in range(self.n):
            for i in range(j):
                if self.get(i, j):
                    out.append((i, j))
        return out

    def to_hex(self) -> str:
        width = max(1, (pair_count(self.n) + 3) // 4)
        return format(self.bits, f"0{width}x")

    @classmethod
    def from_hex(cls, n: int, text: str) -> "PairVector":
        return cls(n, int(text, 16))

    @classmethod
    def zero(cls, n: int) -> "PairVector":
        return cls(n, 0)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "PairVector":
        bits = 0
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"pair ({i},{j}) out of range")
            bits |= 1 << pair_index(i, j)
        return cls(n, bits)


def encode_tournament(T: OrientedGraph) -> PairVector:
    """Backward-arc indicator: bit {i,j} (i<j) is set iff the arc runs j -> i."""
    if not is_tournament(T):
        raise InputError("encode_tournament needs a tournament")
    bits = 0
    for u, v in T.arcs():
        if u > v:
            bits |= 1 << pair_index(v, u)
    return PairVector(T.n, bits)


def encode_set(X: Iterable[int], n: int) -> PairVector:
    """Pair indicator of a vertex set: bit {i,j} set iff both ends lie in X."""
    xs = sorted(set(X))
    if xs and not (0 <= xs[0] and xs[-1] < n):
        raise InputError(f"set {xs} out of range for n={n}")
    bits = 0
    for a, b in itertools.combinations(xs, 2):
        bits |= 1 << pair_index(a, b)
    return PairVector(n, bits)


@dataclass(frozen=True)
class ParitySignature:
    """The invariant preserved by all (=p)-inversions, keyed by p mod 4.

    Payload layout: residue 2 -> empty; residue 0 -> one total-parity bit;
    residue 3 -> per-vertex incident parities for vertices 0..n-2; residue 1
    -> those n-1 bits followed by the total-parity bit.
    """

    residue: int
    bits: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.bits)


def _check_range(p: int, n: int) -> None:
    if p < 2:
        raise InputError("p must be at least 2")
    if n < p + 2:
        raise UnsupportedRangeError(f"need n >= p + 2 (got n={n}, p={p})")


def parity_signature(u: PairVector, p: int, n: int) -> ParitySignature:
    _check_range(p, n)
    if u.n != n:
        raise InputError("vector length does not match n")
    r = p % 4
    if r == 2:
        return ParitySignature(2, ())
    total = u.bits.bit_count() & 1
    if r == 0:
        return ParitySignature(0, (total,))
    masks = incident_masks(n)
    per = tuple((u.bits & masks[i]).bit_count() & 1 for i in range(n - 1))
    if r == 3:
        return ParitySignature(3, per)
    return ParitySignature(1, per + (total,))


def signatures_equal(u1: PairVector, u2: PairVector, p: int, n: int) -> bool:
    return parity_signature(u1, p, n) == parity_signature(u2, p, n)


def span_member(u: PairVector, p: int, n: int) -> bool:
    """Whether u lies in the span of all (=p)-set indicators."""
    return parity_signature(u, p, n).is_zero()


def _reduce(vec: int, combo: int, pivots: dict[int, tuple[int, int]]):
    """Cancel lowest set bits against pivots; returns (vec, combo, open position)."""
    while vec:
        pos = (vec & -vec).bit_length() - 1
        if pos not in pivots:
            return vec, combo, pos
        pv, pc = pivots[pos]
        vec ^= pv
        combo ^= pc
    return 0, combo, None


def span_witness_bruteforce(
    u: PairVector, p: int, n: int, limit: int = 100_000
) -> Optional[InversionFamily]:
    """A family of (=p)-sets whose indicators XOR to u, by Gaussian elimination
    over all C(n,p) generators, or None when u is outside their span."""
    if p < 0 or p > n:
        raise InputError("need 0 <= p <= n")
    if math.comb(n, p) > limit:
        raise CapacityError(f"C({n},{p}) generators exceed limit {limit}")
    generators = list(itertools.combinations(range(n), p))
    pivots: dict[int, tuple[int, int]] = {}
    for gi, X in enumerate(generators):
        vec, combo, pos = _reduce(encode_set(X, n).bits, 1 << gi, pivots)
        if vec:
            pivots[pos] = (vec, combo)
    vec, combo, _ = _reduce(u.bits, 0, pivots)
    if vec:
        return None
    chosen = tuple(
        frozenset(generators[i]) for i in range(len(generators)) if combo >> i & 1
    )
    witness = InversionFamily(chosen, p, EXACT)
    check = 0
    for X in chosen:
        check ^= encode_set(X, n).bits
    assert check == u.bits
    return witness


def _restrict(X: frozenset[int], edge_index: dict[tuple[int, int], int]) -> int:
    bits = 0
    for (a, b), idx in edge_index.items():
        if a in X and b in X:
            bits |= 1 << idx
    return bits


def minimize_family(D1: OrientedGraph, family: InversionFamily) -> InversionFamily:
    """Drop zero-effect subfamilies until the restrictions to E(UG(D1)) are
    linearly independent; the result is a subfamily with identical net effect
    and at most |E(UG(D1))| members."""
    family.validate(D1.n)
    edges = D1.underlying_pairs()
    edge_index = {e: i for i, e in enumerate(edges)}
    sets = list(family.sets)
    while True:
        pivots: dict[int, tuple[int, int]] = {}
        dependent = None
        for i, X in enumerate(sets):
            vec, combo, pos = _reduce(_restrict(X, edge_index), 1 << i, pivots)
            if vec == 0:
                dependent = combo
                break
            pivots[pos] = (vec, combo)
        if dependent is None:
            break
        sets = [X for i, X in enumerate(sets) if not dependent >> i & 1]
    assert len(sets) <= len(edges)
    return InversionFamily(tuple(sets), family.p, family.mode)
