"""The puzzle canon: colored cubes and the eight-cube assembly,
compartment-colored triangles and squares with the hexagon puzzle,
stamp foldings, contact systems, reduced Latin squares, the measuring
rod, weighing sets, and rook placements by differentiation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .exactcore import MultiPoly
from .partitions import enumerate_partitions, is_perfect, is_subperfect

# -- cubes -------------------------------------------------------------------

# Face order: Up, Down, Front, Back, Left, Right.
FACES = ("U", "D", "F", "B", "L", "R")
U, D, F, B, L, R = range(6)

Cube = Tuple[int, int, int, int, int, int]

# Quarter turns as face permutations: entry f of the rotated cube shows the
# color that face PERM[f] showed before the turn.
_YAW = (U, D, L, R, B, F)      # top view, clockwise: L->F, F->R, R->B, B->L
_PITCH = (F, B, D, U, L, R)    # front rises: F->U, U->B, B->D, D->F


def _apply(perm: Sequence[int], cube: Sequence[int]) -> Cube:
    return tuple(cube[perm[f]] for f in range(6))


def _compose(p1: Sequence[int], p2: Sequence[int]) -> Tuple[int, ...]:
    # apply p2 first, then p1
    return tuple(p2[p1[f]] for f in range(6))


def _rotation_group() -> List[Tuple[int, ...]]:
    identity = tuple(range(6))
    group = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for gen in (_YAW, _PITCH):
                h = _compose(g, gen)
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(group)


ROTATIONS: List[Tuple[int, ...]] = _rotation_group()
assert len(ROTATIONS) == 24


def orientations(cube: Sequence[int]) -> List[Cube]:
    return [_apply(rot, cube) for rot in ROTATIONS]


def canonical_cube(cube: Sequence[int]) -> Cube:
    """Lexicographic minimum over the 24 rotations."""
    if len(cube) != 6:
        raise ValueError("a cube has six faces")
    return min(orientations(tuple(cube)))


def generate_cubes(k: int, mode: str = "all-distinct-faces") -> List[Cube]:
    """Rotation-distinct cubes on k colors.

    `all-distinct-faces` uses every color exactly once (needs k = 6 for
    the classic thirty); `any-coloring` allows repeats.
    """
    if k < 1:
        raise ValueError("need at least one color")
    if mode == "all-distinct-faces":
        if k != 6:
            raise ValueError("all-distinct-faces mode needs exactly six colors")
        candidates = itertools.permutations(range(k))
    elif mode == "any-coloring":
        candidates = itertools.product(range(k), repeat=6)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    seen: Set[Cube] = set()
    out: List[Cube] = []
    for cube in candidates:
        canon = canonical_cube(cube)
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return sorted(out)


def cube_orbit_count(k: int) -> int:
    """(k^6 + 3k^4 + 12k^3 + 8k^2) / 24: rotation classes of colorings."""
    return (k**6 + 3 * k**4 + 12 * k**3 + 8 * k**2) // 24


def associated_cube(cube: Sequence[int]) -> Cube:
    """The mirror partner: exchange one pair of opposite face colors."""
    cube = tuple(cube)
    if len(set(cube)) != 6:
        raise ValueError("associated cubes are defined for all-distinct colorings")
    swapped = (cube[D], cube[U]) + cube[2:]
    return canonical_cube(swapped)


# 2x2x2 positions as (x, y, z) bits; the showing faces per axis.
_POSITIONS = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]


def _outer_faces(pos: Tuple[int, int, int]) -> Tuple[int, int, int]:
    x, y, z = pos
    return (L if x == 0 else R, F if y == 0 else B, D if z == 0 else U)


@dataclass(frozen=True)
class CubeAssembly:
    """Placement of eight cubes: position -> (cube, orientation index)."""

    placements: Tuple[Tuple[Tuple[int, int, int], Cube, int], ...]

    def oriented(self) -> Dict[Tuple[int, int, int], Cube]:
        return {
            pos: _apply(ROTATIONS[rot], cube) for pos, cube, rot in self.placements
        }


def verify_assembly(assembly: CubeAssembly, target: Optional[Cube]) -> bool:
    """Re-check all constraints from scratch: outer arrangement (when a
    target is given, each big face uniformly the target's color) and all
    twelve internal face matches."""
    oriented = assembly.oriented()
    if set(oriented) != set(_POSITIONS):
        return False
    if target is not None:
        for pos, faces in oriented.items():
            for face in _outer_faces(pos):
                if faces[face] != target[face]:
                    return False
    else:
        big: Dict[int, int] = {}
        for pos, faces in oriented.items():
            for face in _outer_faces(pos):
                if big.setdefault(face, faces[face]) != faces[face]:
                    return False
    pairs = ((R, L, (1, 0, 0)), (B, F, (0, 1, 0)), (U, D, (0, 0, 1)))
    for pos, faces in oriented.items():
        for hi_face, lo_face, delta in pairs:
            neighbor = tuple(p + d for p, d in zip(pos, delta))
            if neighbor in oriented:
                if faces[hi_face] != oriented[neighbor][lo_face]:
                    return False
    return True


def mayblox_solve(
    target: Cube,
    pool: Optional[Sequence[Cube]] = None,
    exclude_associate: bool = True,
) -> Optional[CubeAssembly]:
    """Build a 2x2x2 copy of the target from eight of the other cubes.

    The target itself is never used; its mirror associate is also barred
    by default.  Internal faces must match pairwise.
    """
    target = canonical_cube(target)
    if pool is None:
        pool = [c for c in generate_cubes(6) if c != target]
    banned = {target}
    if exclude_associate:
        banned.add(associated_cube(target))
    pool = [c for c in pool if canonical_cube(c) not in banned]
    return _assemble(pool, target)


def mayblox_solve_any(pool: Optional[Sequence[Cube]] = None) -> Optional[CubeAssembly]:
    """Target-free variant: any uniform-face 2x2x2 from eight pool cubes."""
    if pool is None:
        pool = generate_cubes(6)
    for virtual_target in generate_cubes(6):
        result = _assemble([c for c in pool], virtual_target)
        if result is not None:
            return result
    return None


def _assemble(pool: Sequence[Cube], target: Cube) -> Optional[CubeAssembly]:
    # Precompute, per cube, the orientations satisfying each corner's
    # outer-face constraint.
    per_position: List[List[Tuple[int, Cube, int]]] = []
    for pos in _POSITIONS:
        wanted = {face: target[face] for face in _outer_faces(pos)}
        options = []
        for ci, cube in enumerate(pool):
            for ri, rot in enumerate(ROTATIONS):
                faces = _apply(rot, cube)
                if all(faces[f] == color for f, color in wanted.items()):
                    options.append((ci, faces, ri))
        per_position.append(options)

    order = sorted(range(len(_POSITIONS)), key=lambda i: len(per_position[i]))
    placed: Dict[Tuple[int, int, int], Tuple[int, Cube, int]] = {}
    used: Set[int] = set()
    pairs = ((R, L, (1, 0, 0)), (B, F, (0, 1, 0)), (U, D, (0, 0, 1)))

    def fits(pos, faces) -> bool:
        for hi, lo, delta in pairs:
            above = tuple(p + d for p, d in zip(pos, delta))
            below = tuple(p - d for p, d in zip(pos, delta))
            if above in placed and faces[hi] != placed[above][1][lo]:
                return False
            if below in placed and placed[below][1][hi] != faces[lo]:
                return False
        return True

    def search(idx: int) -> bool:
        if idx == len(order):
            return True
        pos = _POSITIONS[order[idx]]
        for ci, faces, ri in per_position[order[idx]]:
            if ci in used or not fits(pos, faces):
                continue
            placed[pos] = (ci, faces, ri)
            used.add(ci)
            if search(idx + 1):
                return True
            del placed[pos]
            used.discard(ci)
        return False

    if not search(0):
        return None
    placements = tuple(
        (pos, pool[ci], ri) for pos, (ci, _, ri) in sorted(placed.items())
    )
    return CubeAssembly(placements)


# -- edge-compartment tiles ---------------------------------------------------

Tile = Tuple[int, ...]


def canonical_tile(tile: Sequence[int]) -> Tile:
    """Lexicographic minimum over cyclic rotation (no reflection)."""
    tile = tuple(tile)
    n = len(tile)
    return min(tile[i:] + tile[:i] for i in range(n))


def generate_tiles(sides: int, k: int) -> List[Tile]:
    if sides < 3 or k < 1:
        raise ValueError("need at least 3 sides and 1 color")
    seen = set()
    out = []
    for tile in itertools.product(range(k), repeat=sides):
        canon = canonical_tile(tile)
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return sorted(out)


def generate_triangles(k: int) -> List[Tile]:
    """(k^3 + 2k)/3 rotation-distinct three-compartment triangles."""
    return generate_tiles(3, k)


def generate_squares(k: int) -> List[Tile]:
    """(k^4 + k^2 + 2k)/4 rotation-distinct four-compartment squares."""
    return generate_tiles(4, k)


def triangle_count_formula(k: int) -> int:
    return (k**3 + 2 * k) // 3


def square_count_formula(k: int) -> int:
    return (k**4 + k**2 + 2 * k) // 4


# Hexagon board of side 2: the 24 unit cells of a side-6 triangle with the
# three side-2 corners removed.  Cells are (row, pos) with pos even for
# upward triangles; edges are keyed by doubled-coordinate vertex pairs so
# adjacency falls out of shared keys.


def _triangle_cells(side: int):
    for i in range(side):
        for pos in range(2 * i + 1):
            yield (i, pos)


def _cell_vertices(cell) -> Tuple[Tuple[int, int], ...]:
    i, pos = cell
    j = pos // 2
    if pos % 2 == 0:  # upward: apex on row i
        apex = (2 * j + (5 - i), i)          # x doubled to keep integers
        bl = (2 * j + (5 - i) - 1, i + 1)
        br = (2 * j + (5 - i) + 1, i + 1)
        return (apex, bl, br)
    # downward: two vertices on row i, one below
    tl = (2 * j + (5 - i), i)
    tr = (2 * j + (5 - i) + 2, i)
    bottom = (2 * j + (5 - i) + 1, i + 1)
    return (tl, tr, bottom)


def _cell_edges(cell) -> List[FrozenSet[Tuple[int, int]]]:
    """Edges in counterclockwise order starting from the leftmost edge."""
    v = _cell_vertices(cell)
    i, pos = cell
    if pos % 2 == 0:
        apex, bl, br = v
        return [frozenset((apex, bl)), frozenset((bl, br)), frozenset((br, apex))]
    tl, tr, bottom = v
    return [frozenset((tl, bottom)), frozenset((bottom, tr)), frozenset((tr, tl))]


def hexagon_board(side: int = 2) -> Tuple[List, Dict, List]:
    """(cells, edge->cells index, perimeter edge keys) for the hexagon."""
    big = 3 * side
    corner = side
    removed = set()
    # top corner: rows 0..corner-1 entirely
    for i in range(corner):
        for pos in range(2 * i + 1):
            removed.add((i, pos))
    # bottom-left and bottom-right corners
    for i in range(big - corner, big):
        depth = i - (big - corner)
        for pos in range(2 * depth + 1):
            removed.add((i, pos))
            removed.add((i, 2 * i - pos))
    cells = [c for c in _triangle_cells(big) if c not in removed]
    edge_map: Dict[FrozenSet, List] = {}
    for cell in cells:
        for edge in _cell_edges(cell):
            edge_map.setdefault(edge, []).append(cell)
    perimeter = [edge for edge, owners in edge_map.items() if len(owners) == 1]
    return cells, edge_map, perimeter


@dataclass(frozen=True)
class HexagonSolution:
    placements: Tuple[Tuple[Tuple[int, int], Tile, int], ...]
    border_color: int


def _placed_edge_colors(cell, tile: Tile, rotation: int):
    edges = _cell_edges(cell)
    return {edges[e]: tile[(e + rotation) % 3] for e in range(3)}


def verify_hexagon(solution: HexagonSolution, tiles: Sequence[Tile]) -> bool:
    """Independent re-check: tile set, edge matches, and border color."""
    cells, edge_map, perimeter = hexagon_board(2)
    placed = {cell: (tile, rot) for cell, tile, rot in solution.placements}
    if sorted(placed) != sorted(cells):
        return False
    used = sorted(canonical_tile(t) for t, _ in placed.values())
    if used != sorted(canonical_tile(t) for t in tiles):
        return False
    colors: Dict[FrozenSet, List[int]] = {}
    for cell, (tile, rot) in placed.items():
        for edge, color in _placed_edge_colors(cell, tile, rot).items():
            colors.setdefault(edge, []).append(color)
    for edge, owners in edge_map.items():
        cs = colors[edge]
        if len(owners) == 2 and cs[0] != cs[1]:
            return False
        if len(owners) == 1 and cs[0] != solution.border_color:
            return False
    return True


def hexagon_solve(
    tiles: Sequence[Tile],
    border_color: int,
    restarts: int = 60,
    node_budget: int = 60_000,
) -> Optional[HexagonSolution]:
    """Edge-matched side-2 hexagon with a uniform border color.

    Expects the full set of 24 triangles; returns None when unsolvable.
    The backtracker randomizes its value order per restart (seeds
    0..restarts-1 with a fixed node budget each), which is deterministic
    across runs while escaping pathological orderings.
    """
    import random as _random

    cells, edge_map, perimeter = hexagon_board(2)
    if len(tiles) != len(cells):
        return None
    perimeter_set = set(perimeter)
    tiles = [canonical_tile(t) for t in tiles]
    cell_edges = {cell: _cell_edges(cell) for cell in cells}

    class _Budget(Exception):
        pass

    def attempt(seed: int) -> Optional[Dict]:
        rng = _random.Random(seed)
        edge_color: Dict[FrozenSet, int] = {e: border_color for e in perimeter_set}
        used = [False] * len(tiles)
        placements: Dict[Tuple[int, int], Tuple[Tile, int]] = {}
        nodes = 0

        def pick_cell():
            best = best_key = None
            for cell in cells:
                if cell in placements:
                    continue
                fixed = sum(1 for e in cell_edges[cell] if e in edge_color)
                key = (-fixed, cell)
                if best_key is None or key < best_key:
                    best_key, best = key, cell
            return best

        def candidates(cell):
            want = [edge_color.get(e) for e in cell_edges[cell]]
            out = []
            for ti, tile in enumerate(tiles):
                if used[ti]:
                    continue
                for rot in range(3):
                    if all(
                        want[e] is None or tile[(e + rot) % 3] == want[e]
                        for e in range(3)
                    ):
                        out.append((ti, tile, rot))
            return out

        def search(depth: int) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > node_budget:
                raise _Budget
            if depth == len(cells):
                return True
            cell = pick_cell()
            cands = candidates(cell)
            if seed:
                rng.shuffle(cands)
            for ti, tile, rot in cands:
                record: List[FrozenSet] = []
                edges = cell_edges[cell]
                for e in range(3):
                    edge = edges[e]
                    if edge not in edge_color:
                        edge_color[edge] = tile[(e + rot) % 3]
                        record.append(edge)
                used[ti] = True
                placements[cell] = (tile, rot)
                if search(depth + 1):
                    return True
                used[ti] = False
                del placements[cell]
                for edge in record:
                    del edge_color[edge]
            return False

        try:
            return placements if search(0) else {}
        except _Budget:
            return None

    exhausted = False
    for seed in range(restarts):
        result = attempt(seed)
        if result:
            return HexagonSolution(
                tuple((cell, tile, rot) for cell, (tile, rot) in sorted(result.items())),
                border_color,
            )
        if result == {}:
            exhausted = True
            break  # full search space exhausted: genuinely unsolvable
    if exhausted:
        return None
    return None


# -- stamp foldings ------------------------------------------------------------

DEFAULT_STAMP_CAP = 12


def stamp_foldings(n: int, cap: int = DEFAULT_STAMP_CAP) -> int:
    """Labeled foldings of a strip of n stamps.

    A folding is a stack order of the stamps such that, for each parity
    class of joints, the joining arcs are non-crossing.  Counted by
    inserting stamps one at a time into every stack slot that keeps the
    arcs planar.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > cap:
        raise ValueError(f"n = {n} exceeds the enumeration cap {cap}")
    if n == 1:
        return 1
    count = 0

    def crossings_ok(stack: List[int]) -> bool:
        pos = {stamp: i for i, stamp in enumerate(stack)}
        arcs = []
        top = max(stack)
        for s in range(1, top):
            if s in pos and s + 1 in pos:
                a, b = sorted((pos[s], pos[s + 1]))
                arcs.append((a, b, s % 2))
        for (a1, b1, p1), (a2, b2, p2) in itertools.combinations(arcs, 2):
            if p1 != p2:
                continue
            if a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1:
                return False
        return True

    def extend(stack: List[int], nxt: int):
        nonlocal count
        if nxt > n:
            count += 1
            return
        for slot in range(len(stack) + 1):
            stack.insert(slot, nxt)
            if crossings_ok(stack):
                extend(stack, nxt + 1)
            stack.pop(slot)

    extend([1], 2)
    return count


# -- contact systems (involutions) ---------------------------------------------


def contact_system_count(n: int) -> int:
    """Self-inverse permutations of n letters: 1, 2, 4, 10, 26, 76, ..."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a, b = 1, 1  # I(0), I(1)
    if n == 0:
        return 1
    for m in range(2, n + 1):
        a, b = b, b + (m - 1) * a
    return b


def enumerate_contact_systems(n: int) -> List[Tuple[int, ...]]:
    """All involutions of {0..n-1}, each as the tuple of images."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out: List[Tuple[int, ...]] = []

    def rec(assigned: Dict[int, int]):
        free = [i for i in range(n) if i not in assigned]
        if not free:
            out.append(tuple(assigned[i] for i in range(n)))
            return
        first = free[0]
        assigned[first] = first
        rec(assigned)
        del assigned[first]
        for partner in free[1:]:
            assigned[first] = partner
            assigned[partner] = first
            rec(assigned)
            del assigned[first]
            del assigned[partner]

    rec({})
    return sorted(out)


# -- Latin squares ---------------------------------------------------------------

LATIN_ORDER_CAP = 6


def latin_reduced_count(n: int) -> int:
    """Reduced n x n Latin squares (first row and column in order)."""
    if not 1 <= n <= LATIN_ORDER_CAP:
        raise ValueError(f"order must be between 1 and {LATIN_ORDER_CAP}")
    return _latin_count(n, reduced=True)


def latin_total_count(n: int) -> int:
    """All n x n Latin squares by exhaustive backtracking (small n)."""
    if not 1 <= n <= 4:
        raise ValueError("total counting is desk-scale only (n <= 4)")
    return _latin_count(n, reduced=False)


def _latin_count(n: int, reduced: bool) -> int:
    grid = [[-1] * n for _ in range(n)]
    if reduced:
        grid[0] = list(range(n))
        for i in range(n):
            grid[i][0] = i
    count = 0
    cells = [
        (r, c)
        for r in range(n)
        for c in range(n)
        if grid[r][c] == -1
    ]

    def ok(r, c, v):
        return all(grid[r][j] != v for j in range(n)) and all(
            grid[i][c] != v for i in range(n)
        )

    def search(idx):
        nonlocal count
        if idx == len(cells):
            count += 1
            return
        r, c = cells[idx]
        for v in range(n):
            if ok(r, c, v):
                grid[r][c] = v
                search(idx + 1)
                grid[r][c] = -1

    search(0)
    return count


# -- measuring rod ----------------------------------------------------------------


def measuring_rod(k: int) -> Tuple[int, ...]:
    """First k marks of the greedy all-differences-distinct ruler.

    Starts 0, 1, 3, 7, 12, 20, 30, 44, ...; each new mark is the smallest
    integer keeping every pairwise difference distinct.  Prefix-stable.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    marks = [0]
    diffs: Set[int] = set()
    candidate = 1
    while len(marks) < k:
        new_diffs = {candidate - m for m in marks}
        if len(new_diffs) == len(marks) and not (new_diffs & diffs):
            diffs |= new_diffs
            marks.append(candidate)
        candidate += 1
    return tuple(marks)


# -- weighing sets -----------------------------------------------------------------


def weighing_set(u: int, pans: str = "one") -> Tuple[int, ...]:
    """Fewest weights measuring every 1..u uniquely.

    One pan: a perfect partition of u (unique subset sums); two pans: a
    subperfect partition (unique signed subset sums).  Ties in size break
    lexicographically on the descending part list.

    Perfect partitions exist for every u; subperfect ones only for
    certain u (1, 2, 4, 13, ...), so the two-pan mode can raise.
    """
    if u < 1:
        raise ValueError("u must be at least 1")
    if pans not in ("one", "two"):
        raise ValueError("pans must be 'one' or 'two'")
    test = is_perfect if pans == "one" else is_subperfect
    best: Optional[Tuple[int, ...]] = None
    for partition in enumerate_partitions(u):
        if best is not None and len(partition) > len(best):
            continue
        if test(partition):
            if best is None or (len(partition), partition) < (len(best), best):
                best = partition
    if best is None:
        raise ValueError(f"no {'perfect' if pans == 'one' else 'subperfect'} partition of {u} exists")
    return best


# -- rook placements by differentiation ----------------------------------------------


def rook_row_counts(n: int, k: int) -> int:
    """Non-attacking placements of k rooks added row by row on n x n.

    Realized as the leading coefficient after k formal differentiations
    of x^n, i.e. n (n-1) ... (n-k+1).
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    poly = MultiPoly.monomial(("x",), (n,), 1)
    for _ in range(k):
        poly = poly.diff("x")
    value = poly.coeff((n - k,))
    assert value.denominator == 1
    return int(value)
