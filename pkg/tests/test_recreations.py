import itertools
import math
import time

import pytest

from combanal import recreations as rc


class TestCubes:
    def test_rotation_group_order(self):
        assert len(rc.ROTATIONS) == 24

    def test_thirty_cubes(self):
        assert len(rc.generate_cubes(6)) == 30

    def test_single_color(self):
        assert rc.generate_cubes(1, "any-coloring") == [(0, 0, 0, 0, 0, 0)]

    def test_orbit_counts_match_formula(self):
        for k in range(1, 5):
            got = len(rc.generate_cubes(k, "any-coloring"))
            assert got == rc.cube_orbit_count(k)
        assert rc.cube_orbit_count(2) == 10

    def test_canonicalization_idempotent(self):
        for cube in rc.generate_cubes(3, "any-coloring"):
            assert rc.canonical_cube(cube) == cube

    def test_associated_is_involution_without_fixed_points(self):
        cubes = rc.generate_cubes(6)
        for c in cubes:
            a = rc.associated_cube(c)
            assert a != c
            assert rc.associated_cube(a) == c

    def test_fifteen_associated_pairs(self):
        cubes = rc.generate_cubes(6)
        pairs = {frozenset((c, rc.associated_cube(c))) for c in cubes}
        assert len(pairs) == 15

    def test_associated_same_for_any_opposite_pair_swap(self):
        # swapping U/D, F/B or L/R all give the same mirror cube
        for cube in rc.generate_cubes(6)[:5]:
            ud = rc.canonical_cube((cube[1], cube[0]) + cube[2:])
            fb = rc.canonical_cube(cube[:2] + (cube[3], cube[2]) + cube[4:])
            lr = rc.canonical_cube(cube[:4] + (cube[5], cube[4]))
            assert ud == fb == lr == rc.associated_cube(cube)


class TestMayblox:
    def test_every_target_is_solvable_and_verifies(self):
        cubes = rc.generate_cubes(6)
        start = time.time()
        for target in cubes:
            solution = rc.mayblox_solve(target)
            assert solution is not None, target
            assert rc.verify_assembly(solution, target)
            used = {rc.canonical_cube(c) for _, c, _ in solution.placements}
            assert target not in used
            assert rc.associated_cube(target) not in used
            assert len(used) == 8
        assert time.time() - start < 60

    def test_verify_rejects_tampering(self):
        cubes = rc.generate_cubes(6)
        solution = rc.mayblox_solve(cubes[0])
        # swap the cubes in two positions without reorienting
        placements = list(solution.placements)
        (p0, c0, r0), (p1, c1, r1) = placements[0], placements[1]
        placements[0], placements[1] = (p0, c1, r0), (p1, c0, r1)
        assert not rc.verify_assembly(rc.CubeAssembly(tuple(placements)), cubes[0])

    def test_target_free_variant(self):
        solution = rc.mayblox_solve_any()
        assert solution is not None
        assert rc.verify_assembly(solution, None)


class TestTiles:
    def test_triangle_counts(self):
        assert len(rc.generate_triangles(4)) == 24 == rc.triangle_count_formula(4)
        assert len(rc.generate_triangles(5)) == 45 == rc.triangle_count_formula(5)
        assert rc.generate_triangles(1) == [(0, 0, 0)]

    def test_square_counts(self):
        assert len(rc.generate_squares(3)) == 24 == rc.square_count_formula(3)
        assert len(rc.generate_squares(2)) == 6 == rc.square_count_formula(2)

    def test_tile_canonicalization(self):
        assert rc.canonical_tile((2, 0, 1)) == (0, 1, 2)
        for t in rc.generate_triangles(3):
            assert rc.canonical_tile(t) == t

    def test_reflection_not_identified(self):
        # (0,1,2) and its mirror (0,2,1) are distinct tiles under rotation
        tiles = set(rc.generate_triangles(3))
        assert (0, 1, 2) in tiles and (0, 2, 1) in tiles


class TestHexagon:
    def test_board_shape(self):
        cells, edge_map, perimeter = rc.hexagon_board(2)
        assert len(cells) == 24
        assert len(perimeter) == 12
        owners = sorted(len(v) for v in edge_map.values())
        assert owners.count(1) == 12 and owners.count(2) == 30

    def test_solvable_with_uniform_border(self):
        tiles = rc.generate_triangles(4)
        solution = rc.hexagon_solve(tiles, border_color=2)
        assert solution is not None
        assert rc.verify_hexagon(solution, tiles)

    def test_checker_catches_bad_border(self):
        tiles = rc.generate_triangles(4)
        solution = rc.hexagon_solve(tiles, border_color=2)
        tampered = rc.HexagonSolution(solution.placements, border_color=3)
        assert not rc.verify_hexagon(tampered, tiles)

    def test_incomplete_set_unsolvable(self):
        tiles = rc.generate_triangles(4)
        assert rc.hexagon_solve(tiles[:23], 0) is None


class TestStamps:
    def test_known_values(self):
        assert [rc.stamp_foldings(n) for n in range(1, 8)] == [1, 2, 6, 16, 50, 144, 462]

    def test_n4_versus_exhaustive_crossing_check(self):
        # independent oracle: test all 4! stack orders directly
        def valid(perm):
            pos = {stamp: i for i, stamp in enumerate(perm)}
            arcs = [
                (min(pos[s], pos[s + 1]), max(pos[s], pos[s + 1]), s % 2)
                for s in range(1, len(perm))
            ]
            for (a1, b1, p1), (a2, b2, p2) in itertools.combinations(arcs, 2):
                if p1 == p2 and (a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1):
                    return False
            return True

        oracle = sum(valid(p) for p in itertools.permutations(range(1, 5)))
        assert oracle == 16 == rc.stamp_foldings(4)

    def test_corrected_patent_number(self):
        start = time.time()
        assert rc.stamp_foldings(9) == 4536
        assert time.time() - start < 5

    def test_cap(self):
        with pytest.raises(ValueError):
            rc.stamp_foldings(13)


class TestContacts:
    def test_sequence(self):
        assert [rc.contact_system_count(n) for n in range(1, 7)] == [1, 2, 4, 10, 26, 76]

    def test_square_has_ten(self):
        assert rc.contact_system_count(4) == 10
        assert len(rc.enumerate_contact_systems(4)) == 10

    def test_seven_letters(self):
        assert rc.contact_system_count(7) == 232
        assert len(rc.enumerate_contact_systems(7)) == 232

    def test_enumeration_yields_involutions(self):
        for n in range(1, 9):
            systems = rc.enumerate_contact_systems(n)
            assert len(systems) == rc.contact_system_count(n)
            for sigma in systems:
                assert all(sigma[sigma[i]] == i for i in range(n))


class TestLatin:
    def test_reduced_counts(self):
        assert rc.latin_reduced_count(1) == 1
        assert rc.latin_reduced_count(4) == 4
        assert rc.latin_reduced_count(5) == 56  # not the erroneous 52

    def test_total_relation(self):
        for n in range(1, 5):
            total = rc.latin_total_count(n)
            reduced = rc.latin_reduced_count(n)
            assert total == reduced * math.factorial(n) * math.factorial(n - 1)

    def test_cap(self):
        with pytest.raises(ValueError):
            rc.latin_reduced_count(7)


class TestRod:
    def test_first_eight_marks(self):
        assert rc.measuring_rod(8) == (0, 1, 3, 7, 12, 20, 30, 44)

    def test_two_marks(self):
        assert rc.measuring_rod(2) == (0, 1)

    def test_segment_lengths(self):
        marks = rc.measuring_rod(8)
        segments = tuple(b - a for a, b in zip(marks, marks[1:]))
        assert segments == (1, 2, 4, 5, 8, 10, 14)

    def test_all_differences_distinct_k12(self):
        marks = rc.measuring_rod(12)
        diffs = [b - a for a, b in itertools.combinations(marks, 2)]
        assert len(diffs) == len(set(diffs)) == math.comb(12, 2)

    def test_prefix_stability(self):
        for k in range(2, 12):
            assert rc.measuring_rod(k) == rc.measuring_rod(k + 1)[:k]


class TestWeighing:
    def test_one_pan_7(self):
        assert rc.weighing_set(7) == (4, 2, 1)

    def test_u1(self):
        assert rc.weighing_set(1) == (1,)
        assert rc.weighing_set(1, "two") == (1,)

    def test_two_pan_4(self):
        assert rc.weighing_set(4, "two") == (3, 1)

    def test_outputs_pass_checks(self):
        from combanal.partitions import is_perfect, is_subperfect

        for u in range(1, 14):
            assert is_perfect(rc.weighing_set(u))
        for u in (1, 2, 4, 13):
            assert is_subperfect(rc.weighing_set(u, "two"))

    def test_two_pan_infeasible_u(self):
        # no multiset summing to 3 measures 1..3 uniquely on two pans
        with pytest.raises(ValueError):
            rc.weighing_set(3, "two")


class TestRooks:
    def test_first_differentiation(self):
        assert rc.rook_row_counts(8, 1) == 8

    def test_no_rooks(self):
        assert rc.rook_row_counts(5, 0) == 1

    def test_second_differentiation(self):
        assert rc.rook_row_counts(8, 2) == 56

    def test_falling_factorial(self):
        for n in range(1, 9):
            for k in range(0, n + 1):
                assert rc.rook_row_counts(n, k) == math.perm(n, k)
