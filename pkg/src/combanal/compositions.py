"""Compositions of unipartite and multipartite numbers.

Includes the circled-dot, line-of-route, and zig-zag conjugations,
essential-node statistics, the rooted-tree and order-k generalizations,
and the Simon Newcomb pack-dealing distribution.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exactcore import poly_ring, series_inverse

Composition = Tuple[int, ...]
VectorPart = Tuple[int, ...]
MultipartiteComposition = Tuple[VectorPart, ...]

DEFAULT_MULTIPARTITE_CAP = 10
DEFAULT_NEWCOMB_CAP = 9


def check_composition(parts: Sequence[int], n: Optional[int] = None) -> Composition:
    parts = tuple(parts)
    if not parts or any(p <= 0 for p in parts):
        raise ValueError("composition parts must be positive")
    if n is not None and sum(parts) != n:
        raise ValueError(f"parts sum to {sum(parts)}, expected {n}")
    return parts


def enumerate_compositions(n: int) -> List[Composition]:
    """All 2^(n-1) compositions of n, in lexicographic order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out: List[Composition] = []

    def rec(remaining: int, prefix: List[int]):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for v in range(1, remaining + 1):
            prefix.append(v)
            rec(remaining - v, prefix)
            prefix.pop()

    rec(n, [])
    return out


def conjugate_composition(parts: Sequence[int]) -> Composition:
    """Conjugate by swapping circled and uncircled dots.

    Equivalent to complementing the break-point subset: a p-part
    composition of n maps to an (n - p + 1)-part composition.
    """
    parts = check_composition(parts)
    n = sum(parts)
    breaks = set(itertools.accumulate(parts[:-1]))
    complement = [i for i in range(1, n) if i not in breaks]
    out = []
    prev = 0
    for b in complement + [n]:
        out.append(b - prev)
        prev = b
    return tuple(out)


def zigzag_rows(parts: Sequence[int]) -> List[Tuple[int, int]]:
    """(start_column, length) of each row of the zig-zag graph.

    Each row starts under the last dot of the previous row.
    """
    parts = check_composition(parts)
    rows = []
    start = 0
    for p in parts:
        rows.append((start, p))
        start += p - 1
    return rows


def zigzag_conjugate(parts: Sequence[int]) -> Composition:
    """Column reading of the zig-zag graph."""
    rows = zigzag_rows(parts)
    width = rows[-1][0] + rows[-1][1]
    cols = [0] * width
    for start, length in rows:
        for c in range(start, start + length):
            cols[c] += 1
    return tuple(cols)


# -- multipartite compositions ------------------------------------------


def enumerate_multipartite_compositions(
    target: Sequence[int], cap: int = DEFAULT_MULTIPARTITE_CAP
) -> List[MultipartiteComposition]:
    """All ordered sequences of nonzero vectors summing to the target."""
    target = tuple(target)
    if not target or any(v < 0 for v in target) or not any(target):
        raise ValueError("target must be a nonzero non-negative vector")
    if sum(target) > cap:
        raise ValueError(
            f"component sum {sum(target)} exceeds the enumeration cap {cap}"
        )
    out: List[MultipartiteComposition] = []

    def vectors_below(bounds: VectorPart) -> Iterable[VectorPart]:
        axes = [range(b + 1) for b in bounds]
        for v in itertools.product(*axes):
            if any(v):
                yield v

    def rec(remaining: VectorPart, prefix: List[VectorPart]):
        if not any(remaining):
            out.append(tuple(prefix))
            return
        for v in vectors_below(remaining):
            prefix.append(v)
            rec(tuple(r - x for r, x in zip(remaining, v)), prefix)
            prefix.pop()

    rec(target, [])
    return out


def bipartite_composition_count_gf(p: int, q: int) -> int:
    """Compositions of the bipartite number (p, q) via the generating
    function: half the coefficient of x^p y^q in 1/(1 - 2x - 2y + 2xy).

    The halving corrects the series' uniform double count (its
    unipartite specialization gives 2^n rather than 2^(n-1)).
    """
    if (p, q) == (0, 0) or p < 0 or q < 0:
        raise ValueError("need a nonzero non-negative bipartite number")
    x, y = poly_ring("x", "y")
    series = series_inverse(1 - 2 * x - 2 * y + 2 * x * y, p + q)
    value = series.coeff((p, q)) / 2
    assert value.denominator == 1
    return int(value)


# -- lines of route and essential nodes ----------------------------------

Point = Tuple[int, int]


@dataclass(frozen=True)
class LineOfRoute:
    """Monotone lattice path with marked nodes.

    Path steps are unit right/up moves; each part (a, b) contributes its
    `a` right steps and then its `b` up steps, and the part boundary is a
    marked node.  An essential node is a path point where the direction
    turns from vertical to horizontal.
    """

    points: Tuple[Point, ...]
    marked: Tuple[Point, ...]

    @classmethod
    def from_composition(cls, parts: Sequence[VectorPart]) -> "LineOfRoute":
        pos = (0, 0)
        points = [pos]
        marked = []
        for a, b in parts:
            if a < 0 or b < 0 or (a == 0 and b == 0):
                raise ValueError("parts must be nonzero non-negative pairs")
            for _ in range(a):
                pos = (pos[0] + 1, pos[1])
                points.append(pos)
            for _ in range(b):
                pos = (pos[0], pos[1] + 1)
                points.append(pos)
            marked.append(pos)
        return cls(tuple(points), tuple(marked))

    def essential_nodes(self) -> Tuple[Point, ...]:
        out = []
        pts = self.points
        for i in range(1, len(pts) - 1):
            before = (pts[i][0] - pts[i - 1][0], pts[i][1] - pts[i - 1][1])
            after = (pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1])
            if before == (0, 1) and after == (1, 0):
                out.append(pts[i])
        return tuple(out)


def route_conjugate(parts: Sequence[VectorPart]) -> MultipartiteComposition:
    """Conjugate of a bipartite composition along its line of route.

    Keeps the essential marked nodes, drops the non-essential ones, and
    marks every previously unmarked interior path node.
    """
    parts = tuple(tuple(p) for p in parts)
    route = LineOfRoute.from_composition(parts)
    end = route.points[-1]
    essential = set(route.essential_nodes())
    old_marks = set(route.marked) - {end}
    new_marks = []
    for pt in route.points[1:-1]:
        if pt in old_marks:
            if pt in essential:
                new_marks.append(pt)
        else:
            new_marks.append(pt)
    out = []
    prev = (0, 0)
    for pt in new_marks + [end]:
        out.append((pt[0] - prev[0], pt[1] - prev[1]))
        prev = pt
    return tuple(out)


def count_by_essential_nodes(p: int, q: int, cap: int = DEFAULT_MULTIPARTITE_CAP) -> Dict[int, int]:
    """Tally of bipartite compositions of (p, q) by essential-node count."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be at least 1")
    tally: Dict[int, int] = {}
    for comp in enumerate_multipartite_compositions((p, q), cap=cap):
        s = len(LineOfRoute.from_composition(comp).essential_nodes())
        tally[s] = tally.get(s, 0) + 1
    return tally


def essential_node_formula_term(p: int, q: int, s: int) -> int:
    """C(p,s) * C(q,s) * 2^(p+q-s-1), the closed-form term (s from 0)."""
    if s < 0:
        raise ValueError("s must be non-negative")
    return math.comb(p, s) * math.comb(q, s) * 2 ** (p + q - s - 1)


# -- rooted trees ---------------------------------------------------------


@dataclass(frozen=True)
class RootedTree:
    """Immutable rooted tree; leaves have no children."""

    children: Tuple["RootedTree", ...] = ()

    def height(self) -> int:
        if not self.children:
            return 0
        return 1 + max(c.height() for c in self.children)

    def leaf_count(self) -> int:
        if not self.children:
            return 1
        return sum(c.leaf_count() for c in self.children)


def composition_tree(parts: Sequence[int]) -> RootedTree:
    """Height-2 tree: one branch per part, carrying that many leaves."""
    parts = check_composition(parts)
    leaf = RootedTree()
    return RootedTree(tuple(RootedTree((leaf,) * p) for p in parts))


def tree_composition(tree: RootedTree) -> Composition:
    """Inverse of composition_tree; rejects malformed trees."""
    if not tree.children:
        raise ValueError("tree must have height 2, got a bare leaf")
    parts = []
    for branch in tree.children:
        if not branch.children:
            raise ValueError("every branch needs at least one leaf")
        if any(leaf.children for leaf in branch.children):
            raise ValueError("tree deeper than height 2")
        parts.append(len(branch.children))
    return tuple(parts)


def combinations_order_k_count(p: int, k: int) -> int:
    """k^(p-1): ways to fill the p-1 gaps with one of k symbols."""
    if p < 1 or k < 1:
        raise ValueError("p and k must be at least 1")
    return k ** (p - 1)


# -- Simon Newcomb's problem ----------------------------------------------


def _distinct_arrangements(values: Sequence[int]) -> Iterable[Tuple[int, ...]]:
    seen = set()
    for arr in itertools.permutations(values):
        if arr not in seen:
            seen.add(arr)
            yield arr


@dataclass
class NewcombDistribution:
    """Deal tallies for a card multiset."""

    by_composition: Dict[Composition, int] = field(default_factory=dict)
    by_pack_count: Dict[int, int] = field(default_factory=dict)

    def total(self) -> int:
        return sum(self.by_composition.values())


def deal_packs(arrangement: Sequence[int], ascending: bool = False) -> Composition:
    """Pack sizes for one deal; equal cards continue the current pack."""
    packs = []
    size = 0
    prev = None
    for card in arrangement:
        if size == 0:
            size = 1
        elif (card <= prev) if not ascending else (card >= prev):
            size += 1
        else:
            packs.append(size)
            size = 1
        prev = card
    packs.append(size)
    return tuple(packs)


def newcomb_distribution(
    counts: Sequence[int], ascending: bool = False, cap: int = DEFAULT_NEWCOMB_CAP
) -> NewcombDistribution:
    """Deal every distinct arrangement of the deck and tally the packs.

    `counts[i]` is the number of cards with value i+1.  The default rule
    keeps dealing onto one pack while values descend, equality counting
    as descending; `ascending=True` gives the variant reading.
    """
    if not counts or any(c < 0 for c in counts) or not any(counts):
        raise ValueError("deck must contain at least one card")
    total_cards = sum(counts)
    if total_cards > cap:
        raise ValueError(f"deck of {total_cards} cards exceeds the cap {cap}")
    deck = []
    for value, count in enumerate(counts, start=1):
        deck.extend([value] * count)
    dist = NewcombDistribution()
    for arrangement in _distinct_arrangements(deck):
        packs = deal_packs(arrangement, ascending=ascending)
        dist.by_composition[packs] = dist.by_composition.get(packs, 0) + 1
        m = len(packs)
        dist.by_pack_count[m] = dist.by_pack_count.get(m, 0) + 1
    return dist
