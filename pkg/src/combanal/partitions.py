"""Partition enumeration and counting.

Covers the pentagonal recurrence, the De Morgan / Warburton / Herschel /
Cayley recurrence tradition, conjugation, modular partitions, perfect and
subperfect partitions, scales of numeration, the generalized
unequal-vs-uneven theorem, relation-pattern compositions, plane
partitions, and two-layer axis-symmetric stacked graphs.

A partition is a plain tuple of positive integers in non-increasing
order; the empty tuple is the unique partition of 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .exactcore import MultiPoly, TruncSeries, poly_ring, series_inverse

Partition = Tuple[int, ...]
PlanePartition = Tuple[Tuple[int, ...], ...]


def check_partition(parts: Sequence[int]) -> Partition:
    parts = tuple(parts)
    if any(p <= 0 for p in parts):
        raise ValueError("partition parts must be positive")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError("partition parts must be non-increasing")
    return parts


@dataclass(frozen=True)
class PartitionConstraint:
    """Restrictions on the partitions to enumerate.

    All fields are optional; `num_parts` fixes the count exactly while
    `min_parts`/`max_parts` bound it.  `allowed_parts` restricts the part
    values to a finite set.
    """

    max_part: Optional[int] = None
    num_parts: Optional[int] = None
    min_parts: Optional[int] = None
    max_parts: Optional[int] = None
    min_part: int = 1
    distinct: bool = False
    allowed_parts: Optional[FrozenSet[int]] = None

    def __post_init__(self):
        if self.min_part < 1:
            raise ValueError("min_part must be at least 1")
        if self.max_part is not None and self.max_part < self.min_part:
            raise ValueError("max_part below min_part")
        for f in (self.num_parts, self.min_parts, self.max_parts):
            if f is not None and f < 0:
                raise ValueError("part counts cannot be negative")
        if self.allowed_parts is not None:
            object.__setattr__(self, "allowed_parts", frozenset(self.allowed_parts))
            if any(v < 1 for v in self.allowed_parts):
                raise ValueError("allowed parts must be positive")

    def _count_ok(self, k: int) -> bool:
        if self.num_parts is not None and k != self.num_parts:
            return False
        if self.min_parts is not None and k < self.min_parts:
            return False
        if self.max_parts is not None and k > self.max_parts:
            return False
        return True

    def _part_ok(self, v: int) -> bool:
        if v < self.min_part:
            return False
        if self.max_part is not None and v > self.max_part:
            return False
        if self.allowed_parts is not None and v not in self.allowed_parts:
            return False
        return True


def enumerate_partitions(
    n: int, constraint: Optional[PartitionConstraint] = None
) -> List[Partition]:
    """All partitions of n meeting the constraint, lexicographically descending."""
    if n < 0:
        raise ValueError("n must be non-negative")
    c = constraint or PartitionConstraint()
    out: List[Partition] = []

    def rec(remaining: int, cap: int, prefix: List[int]):
        if remaining == 0:
            if c._count_ok(len(prefix)):
                out.append(tuple(prefix))
            return
        if c.max_parts is not None and len(prefix) >= c.max_parts:
            return
        if c.num_parts is not None and len(prefix) >= c.num_parts:
            return
        for v in range(min(cap, remaining), c.min_part - 1, -1):
            if not c._part_ok(v):
                continue
            prefix.append(v)
            rec(remaining - v, v - 1 if c.distinct else v, prefix)
            prefix.pop()

    top = n if c.max_part is None else min(n, c.max_part)
    rec(n, top if n else 0, [])
    return out


_PARTITION_TABLE = [1]


def count_partitions(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence, exact.

    Bottom-up table fill, so large n neither recurse deeply nor recompute.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    table = _PARTITION_TABLE
    for m in range(len(table), n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m and g2 > m:
                break
            sign = 1 if k % 2 == 1 else -1
            if g1 <= m:
                total += sign * table[m - g1]
            if g2 <= m:
                total += sign * table[m - g2]
            k += 1
        table.append(total)
    return table[n]


# -- the Appendix-5 recurrence tradition -------------------------------


@lru_cache(maxsize=None)
def demorgan_u(x: int, y: int) -> int:
    """De Morgan's u(x, y): partitions of x with greatest part exactly y.

    Recurrence u(x, y) = u(x-1, y-1) + u(x-y, y); note that the original
    prose says "not exceeding y", but the published table, the recurrence
    and both closed forms are only consistent with the exact-greatest-part
    reading (row sums give p(x)).
    """
    if x < 0 or y < 0:
        return 0
    if x == 0 and y == 0:
        return 1
    if x < 1 or y < 1 or y > x:
        return 0
    if y == 1 or y == x:
        return 1
    return demorgan_u(x - 1, y - 1) + demorgan_u(x - y, y)


def closed_form_u2(x: int) -> int:
    """u(x, 2) = x/2 - 1/4 + (-1)^x/4, evaluated exactly."""
    if x < 2:
        raise ValueError("closed form defined for x >= 2")
    value = Fraction(x, 2) - Fraction(1, 4) + Fraction((-1) ** x, 4)
    assert value.denominator == 1
    return int(value)

# Residue table for the periodic part of u(x, 3): the cube-root-of-unity
# sum beta^x + gamma^x equals 2 when 3 | x and -1 otherwise, so the
# circulating term -7 - 9*(-1)^x + 8*(beta^x + gamma^x) takes these six
# values for x = 0..5 (mod 6).
_U3_PERIODIC = (0, -6, -24, 18, -24, -6)


def closed_form_u3(x: int) -> int:
    """u(x, 3) = (6x^2 + c(x mod 6))/72 with the exact residue table."""
    if x < 3:
        raise ValueError("closed form defined for x >= 3")
    value = Fraction(6 * x * x + _U3_PERIODIC[x % 6], 72)
    assert value.denominator == 1
    return int(value)


@lru_cache(maxsize=None)
def count_exact_parts(n: int, k: int) -> int:
    """Partitions of n into exactly k positive parts."""
    if n == 0 and k == 0:
        return 1
    if n <= 0 or k <= 0 or k > n:
        return 0
    # classic recurrence: smallest part 1 removed, or all parts lowered by 1
    return count_exact_parts(n - 1, k - 1) + count_exact_parts(n - k, k)


def _warburton_route1(n: int, p: int, h: int) -> int:
    # [N, p_h] = sum_z [N - (1 + p(h-1)) - zp, (p-1)_1], z = 0..floor(N/p)-h
    if p == 0:
        return 1 if n == 0 else 0
    if n < p * h:
        return 0
    top = n // p - h
    base = n - (1 + p * (h - 1))
    return sum(count_exact_parts(base - z * p, p - 1) for z in range(top + 1))


def _warburton_route2(n: int, p: int, h: int) -> int:
    # [N, p_h] = sum_{z=0..p} [N - p*h, z_1]
    if p == 0:
        return 1 if n == 0 else 0
    if n < p * h:
        return 0
    m = n - p * h
    return sum(count_exact_parts(m, z) for z in range(p + 1))


def warburton_count(n: int, p: int, h: int) -> int:
    """[N, p_h]: partitions of n into exactly p parts, each at least h.

    Both recurrence routes from the source are evaluated and must agree.
    """
    if n < 0 or p < 0 or h < 1:
        raise ValueError("need n >= 0, p >= 0, h >= 1")
    r1 = _warburton_route1(n, p, h)
    r2 = _warburton_route2(n, p, h)
    if r1 != r2:
        raise AssertionError(f"warburton routes disagree at ({n}, {p}, {h}): {r1} vs {r2}")
    return r1


def prime_circulator(a: int, q: int) -> int:
    """pcr a_q: 1 when a divides q, else 0."""
    if a < 1:
        raise ValueError("modulus must be positive")
    return 1 if q % a == 0 else 0


def cayley_denumerant(elements: Sequence[int], q: int) -> int:
    """P(a, b, c, ...)q: multisets from the elements summing to q."""
    if not elements or any(e < 1 for e in elements):
        raise ValueError("elements must be positive integers")
    if q < 0:
        raise ValueError("q must be non-negative")
    table = [0] * (q + 1)
    table[0] = 1
    for e in sorted(set(elements)):
        for v in range(e, q + 1):
            table[v] += table[v - e]
    return table[q]


def cayley_p12_closed_form(q: int) -> int:
    """P(1,2)q = (2q + 3 + pcr2(q) - pcr2(q-1)) / 4, exactly."""
    value = Fraction(2 * q + 3 + prime_circulator(2, q) - prime_circulator(2, q - 1), 4)
    assert value.denominator == 1
    return int(value)


# -- conjugation and graphs --------------------------------------------


def conjugate(partition: Sequence[int]) -> Partition:
    """Conjugate partition (column reading of the Ferrers graph)."""
    parts = check_partition(partition)
    if not parts:
        return ()
    cols = [0] * parts[0]
    for p in parts:
        for i in range(p):
            cols[i] += 1
    return tuple(cols)


def ferrers_rows(partition: Sequence[int], dot: str = "*") -> List[str]:
    """Ferrers graph rendering: one string of dots per part."""
    return [dot * p for p in check_partition(partition)]


def modular_partition(partition: Sequence[int], m: int) -> List[Tuple[int, ...]]:
    """Rewrite each part q as m + m + ... + r with 0 < r <= m.

    The mod-1 case gives the unary rows of the Ferrers graph.
    """
    if m < 1:
        raise ValueError("modulus must be at least 1")
    rows = []
    for q in check_partition(partition):
        full, rest = divmod(q, m)
        row = [m] * full
        if rest:
            row.append(rest)
        rows.append(tuple(row))
    return rows


def parity_p(n: int) -> str:
    """'odd' or 'even' for p(n)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return "odd" if count_partitions(n) % 2 else "even"


def macmahon_digits(k: int) -> str:
    """First k binary digits of the fractional part of 1.74264...

    Digit j is 1 exactly when p(j) is odd.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    return "".join("1" if count_partitions(j) % 2 else "0" for j in range(1, k + 1))


# -- perfect and subperfect partitions ----------------------------------


def _subset_sum_counts(parts: Sequence[int], signed: bool = False) -> Dict[int, int]:
    """Number of sub-multiset (optionally signed) representations per total."""
    counts: Dict[int, int] = {0: 1}
    multiplicity: Dict[int, int] = {}
    for p in parts:
        multiplicity[p] = multiplicity.get(p, 0) + 1
    for value, mult in sorted(multiplicity.items()):
        nxt: Dict[int, int] = {}
        if signed:
            choices = [
                (i - j) * value
                for i in range(mult + 1)
                for j in range(mult + 1 - i)
            ]
        else:
            choices = [i * value for i in range(mult + 1)]
        for total, ways in counts.items():
            for delta in choices:
                nxt[total + delta] = nxt.get(total + delta, 0) + ways
        counts = nxt
    return counts


def is_perfect(partition: Sequence[int]) -> bool:
    """True when every 1..n has exactly one sub-multiset summing to it."""
    parts = check_partition(partition)
    n = sum(parts)
    if n == 0:
        return False
    counts = _subset_sum_counts(parts)
    return all(counts.get(m, 0) == 1 for m in range(1, n + 1))


def is_subperfect(partition: Sequence[int]) -> bool:
    """True when every 1..n has exactly one signed sub-multiset representation."""
    parts = check_partition(partition)
    n = sum(parts)
    if n == 0:
        return False
    counts = _subset_sum_counts(parts, signed=True)
    return all(counts.get(m, 0) == 1 for m in range(1, n + 1))


def ordered_factorizations(m: int) -> List[Tuple[int, ...]]:
    """All ordered factorizations of m into factors >= 2 (m = 1 gives ())."""
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return [()]
    out: List[Tuple[int, ...]] = []
    for d in range(2, m + 1):
        if m % d == 0:
            for rest in ordered_factorizations(m // d):
                out.append((d,) + rest)
    return out


def enumerate_perfect(n: int) -> List[Partition]:
    """All perfect partitions of n, one per ordered factorization of n + 1.

    The chain 1 + x + ... + x^n factors as a product of cyclotomic-style
    blocks; each ordered factorization n + 1 = f1*f2*...*fk yields the
    perfect partition with f_i - 1 copies of the place value f1*...*f_{i-1}.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    seen = set()
    out: List[Partition] = []
    for factors in ordered_factorizations(n + 1):
        parts: List[int] = []
        place = 1
        for f in factors:
            parts.extend([place] * (f - 1))
            place *= f
        partition = tuple(sorted(parts, reverse=True))
        if partition not in seen:
            seen.add(partition)
            out.append(partition)
    return sorted(out, reverse=True)


@dataclass(frozen=True)
class NumerationScale:
    """Mixed-radix scale induced by a finite partition-of-infinity prefix."""

    alphas: Tuple[int, ...]
    place_values: Tuple[int, ...]
    limit: int

    def partition(self) -> Partition:
        parts: List[int] = []
        for alpha, place in zip(self.alphas, self.place_values):
            parts.extend([place] * alpha)
        return tuple(sorted(parts, reverse=True))

    def digits(self, value: int) -> Tuple[int, ...]:
        """Digits of value, least-significant place first; digit i <= alpha_i."""
        if not 0 <= value <= self.limit:
            raise ValueError("value out of range for this scale")
        digits = []
        for alpha in self.alphas:
            value, d = divmod(value, alpha + 1)
            digits.append(d)
        return tuple(digits)


def scale_of_numeration(alphas: Sequence[int]) -> NumerationScale:
    """Scale with place values 1, (1+a1), (1+a1)(1+a2), ..."""
    alphas = tuple(alphas)
    if not alphas or any(a < 1 for a in alphas):
        raise ValueError("alphas must be positive integers")
    places = [1]
    for a in alphas[:-1]:
        places.append(places[-1] * (1 + a))
    limit = 1
    for a in alphas:
        limit *= 1 + a
    return NumerationScale(alphas, tuple(places), limit - 1)


# -- generalized Euler theorem ------------------------------------------


def generalized_euler_counts(primes: Iterable[int], n: int) -> Tuple[int, int]:
    """Counts (distinct parts, odd parts) over integers coprime to `primes`.

    First count: partitions of n into distinct parts not divisible by any
    listed prime.  Second: partitions into odd such parts, repetitions
    allowed.  The generalized theorem asserts the two are equal.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    ps = sorted(set(primes))
    allowed = [
        v for v in range(1, n + 1) if all(v % p for p in ps)
    ]
    if n == 0:
        return (1, 1)
    count_a = len(
        enumerate_partitions(
            n, PartitionConstraint(distinct=True, allowed_parts=frozenset(allowed))
        )
    )
    odd_allowed = frozenset(v for v in allowed if v % 2)
    count_b = len(
        enumerate_partitions(n, PartitionConstraint(allowed_parts=odd_allowed))
    ) if odd_allowed else 0
    return (count_a, count_b)


# -- relation patterns ---------------------------------------------------

RELATIONS = {
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "=": lambda a, b: a == b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "*": lambda a, b: True,
}


def relation_pattern_count(n: int, pattern: Sequence[str]) -> int:
    """Sequences of positive integers summing to n whose adjacent pairs
    satisfy the given relations (pattern length = parts - 1)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    checks = []
    for rel in pattern:
        if rel not in RELATIONS:
            raise ValueError(f"unknown relation {rel!r}")
        checks.append(RELATIONS[rel])
    s = len(pattern) + 1

    def rec(remaining: int, slot: int, prev: Optional[int]) -> int:
        left = s - slot
        if left == 1:
            if remaining >= 1 and (slot == 0 or checks[slot - 1](prev, remaining)):
                return 1
            return 0
        total = 0
        for v in range(1, remaining - (left - 1) + 1):
            if slot == 0 or checks[slot - 1](prev, v):
                total += rec(remaining - v, slot + 1, v)
        return total

    return rec(n, 0, None)


# -- plane partitions -----------------------------------------------------


def check_plane_partition(rows: Sequence[Sequence[int]]) -> PlanePartition:
    """Canonical form: positive ragged rows, non-increasing both ways."""
    canon = tuple(tuple(r) for r in rows if any(r))
    for row in canon:
        if any(v <= 0 for v in row):
            raise ValueError("canonical plane partitions store positive entries only")
        if any(row[i] < row[i + 1] for i in range(len(row) - 1)):
            raise ValueError("rows must be non-increasing")
    for upper, lower in zip(canon, canon[1:]):
        if len(lower) > len(upper):
            raise ValueError("row lengths must be non-increasing")
        if any(lower[i] > upper[i] for i in range(len(lower))):
            raise ValueError("columns must be non-increasing")
    return canon


def enumerate_plane_partitions(n: int) -> List[PlanePartition]:
    """All plane partitions of n in canonical ragged form."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return [()]
    out: List[PlanePartition] = []

    def rows_under(limit_row: Tuple[int, ...], total: int, acc: List[Tuple[int, ...]]):
        if total == 0:
            out.append(tuple(acc))
            return
        # next row: a partition of some s <= total fitting under limit_row
        def build(idx: int, cap: int, remaining: int, row: List[int]):
            if row:
                rows_under(tuple(row), remaining, acc + [tuple(row)])
            if idx >= len(limit_row) or remaining == 0:
                return
            for v in range(min(cap, limit_row[idx], remaining), 0, -1):
                row.append(v)
                build(idx + 1, v, remaining - v, row)
                row.pop()

        build(0, total, total, [])

    for first_sum in range(1, n + 1):
        for first in enumerate_partitions(first_sum):
            rows_under(first, n - first_sum, [first])
    # group by first row weight descending then lexicographic for stability
    return sorted(out)


def plane_partition_gf(bound: int) -> TruncSeries:
    """MacMahon's plane-partition generating function prod (1-x^k)^-k."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    (x,) = poly_ring("x")
    acc = TruncSeries(MultiPoly.const(("x",), 1), bound)
    for k in range(1, bound + 1):
        inv = series_inverse(1 - x**k, bound)
        for _ in range(k):
            acc = acc * inv
    return acc


def count_plane_partitions(n: int) -> int:
    """Number of plane partitions of n via the generating function."""
    if n < 0:
        raise ValueError("n must be non-negative")
    coeff = plane_partition_gf(n).coeff((n,))
    assert coeff.denominator == 1
    return int(coeff)


DEFAULT_BOX_CELL_CAP = 64


def count_boxed_plane_partitions(
    n: int,
    l: Optional[int],
    m: int,
    cmax: int,
    cell_cap: int = DEFAULT_BOX_CELL_CAP,
) -> int:
    """Plane partitions of n with at most m rows, cmax columns, entries <= l.

    Brute-force grid enumeration; l=None means unbounded entries.  Guarded
    by a cell-count cap since the search space is exponential in cells.
    """
    if n < 0 or m < 0 or cmax < 0 or (l is not None and l < 0):
        raise ValueError("bounds must be non-negative")
    if m * cmax > cell_cap:
        raise ValueError(
            f"search space of {m * cmax} cells exceeds the cap of {cell_cap}"
        )
    if n == 0:
        return 1
    if m == 0 or cmax == 0 or (l is not None and l == 0):
        return 0
    top = n if l is None else min(l, n)
    count = 0
    grid = [[0] * cmax for _ in range(m)]

    def walk(r: int, c: int, remaining: int):
        nonlocal count
        if r == m:
            if remaining == 0:
                count += 1
            return
        nr, nc = (r, c + 1) if c + 1 < cmax else (r + 1, 0)
        above = grid[r - 1][c] if r > 0 else top
        left = grid[r][c - 1] if c > 0 else top
        for v in range(min(above, left, remaining), -1, -1):
            grid[r][c] = v
            walk(nr, nc, remaining - v)
        grid[r][c] = 0

    walk(0, 0, n)
    return count


# -- xy-symmetric two-layer stacked graphs -------------------------------


def _dominates(lower: FrozenSet[int], upper: FrozenSet[int], i: int) -> bool:
    # upper layer fits on the lower one: for every threshold k, the lower
    # layer owns at least as many hooks of index >= k.
    for k in range(1, i + 1):
        if sum(1 for j in lower if j >= k) < sum(1 for j in upper if j >= k):
            return False
    return True


def xy_symmetric_two_layer_poly(i: int) -> Dict[int, int]:
    """Weight-generating polynomial (as exponent -> coefficient) for
    two-layer xy-symmetric stacks with exactly i dots along each axis.

    The lower layer is a self-conjugate diagram given by a set of
    principal hook sizes {2j-1} containing 2i-1; the upper layer is any
    self-conjugate diagram whose hooks it dominates thresholdwise (the
    survivors of the negative-power deletion).
    """
    if i < 1:
        raise ValueError("i must be at least 1")
    hooks = list(range(1, i + 1))
    out: Dict[int, int] = {}
    for rest in itertools.chain.from_iterable(
        itertools.combinations(hooks[:-1], r) for r in range(i)
    ):
        lower = frozenset(rest) | {i}
        wl = sum(2 * j - 1 for j in lower)
        for r2 in range(i + 1):
            for combo in itertools.combinations(hooks, r2):
                upper = frozenset(combo)
                if _dominates(lower, upper, i):
                    w = wl + sum(2 * j - 1 for j in upper)
                    out[w] = out.get(w, 0) + 1
    return out


def xy_symmetric_count(w: int, i: int) -> int:
    """Coefficient of x^w in the two-layer polynomial for axis bound i."""
    return xy_symmetric_two_layer_poly(i).get(w, 0)


def xy_symmetric_cell_enumeration(i: int) -> Dict[int, int]:
    """Independent oracle: enumerate the stacks cell by cell.

    A stack is a pair of nested self-conjugate Young diagrams inside the
    i x i box, the lower one with first row exactly i; the weight is the
    total number of cells.
    """
    if i < 1:
        raise ValueError("i must be at least 1")
    diagrams = []
    for rows in range(i + 1):
        for parts in enumerate_partitions_in_box(rows, i):
            diagrams.append(parts)
    selfconj = [d for d in diagrams if conjugate(d) == d]
    out: Dict[int, int] = {}
    for lower in selfconj:
        if not lower or lower[0] != i:
            continue
        cells_lower = set()
        for r, width in enumerate(lower):
            for c in range(width):
                cells_lower.add((r, c))
        for upper in selfconj:
            cells_upper = set()
            for r, width in enumerate(upper):
                for c in range(width):
                    cells_upper.add((r, c))
            if cells_upper <= cells_lower:
                w = len(cells_lower) + len(cells_upper)
                out[w] = out.get(w, 0) + 1
    return out


def enumerate_partitions_in_box(rows: int, width: int) -> List[Partition]:
    """Partitions with exactly `rows` parts, each between 1 and `width`."""
    if rows == 0:
        return [()]
    out = []
    for parts in enumerate_partitions_in_box_rec(rows, width, width):
        out.append(parts)
    return out


def enumerate_partitions_in_box_rec(rows: int, width: int, cap: int):
    if rows == 0:
        yield ()
        return
    for first in range(min(cap, width), 0, -1):
        for rest in enumerate_partitions_in_box_rec(rows - 1, width, first):
            yield (first,) + rest
