import itertools

import pytest

from combanal import partitions as pt


def brute_partitions(n, max_part=None):
    """Independent partition enumerator used as the oracle."""
    max_part = n if max_part is None else max_part

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    return list(rec(n, max_part))


# Frozen from the De Morgan table (x up to 10, y = greatest part).  The
# printed row for x = 8 sums to 21 instead of p(8) = 22: its (8, 4) cell
# is a transcription slip for 5 (the five partitions with greatest part 4
# are 44, 431, 422, 4211, 41111), so the corrected value is frozen here.
DEMORGAN_TABLE = {
    (10, 1): 1, (10, 2): 5, (10, 3): 8, (10, 4): 9, (10, 5): 7,
    (10, 6): 5, (10, 7): 3, (10, 8): 2, (10, 9): 1, (10, 10): 1,
    (9, 3): 7, (8, 3): 5, (7, 3): 4, (6, 3): 3, (5, 3): 2,
    (6, 2): 3, (5, 2): 2, (4, 2): 2, (9, 4): 6, (8, 4): 5,
}

# Row 12 of the Warburton table: partitions of 12 by number of parts.
WARBURTON_ROW_12 = (1, 6, 12, 15, 13, 11, 7, 5, 3, 2, 1, 1)


class TestEnumerateAndCount:
    def test_partitions_of_four(self):
        got = pt.enumerate_partitions(4)
        assert got == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_partition_of_zero(self):
        assert pt.enumerate_partitions(0) == [()]

    def test_fourteen_tripartitions_of_thirteen(self):
        got = pt.enumerate_partitions(
            13, pt.PartitionConstraint(num_parts=3, min_part=1)
        )
        assert len(got) == 14

    def test_count_matches_enumeration_up_to_40(self):
        for n in range(41):
            assert pt.count_partitions(n) == len(pt.enumerate_partitions(n))

    def test_published_table_values(self):
        assert pt.count_partitions(0) == 1
        assert pt.count_partitions(27) == 3010
        assert pt.count_partitions(30) == 5604
        assert pt.count_partitions(38) == 26015

    def test_p200_fast(self):
        # full table to 200 by the pentagonal recurrence
        assert pt.count_partitions(200) == 3972999029388

    def test_ramanujan_congruences(self):
        for n in range(101):
            assert pt.count_partitions(5 * n + 4) % 5 == 0
            assert pt.count_partitions(7 * n + 5) % 7 == 0

    def test_constraints(self):
        got = pt.enumerate_partitions(
            6, pt.PartitionConstraint(distinct=True)
        )
        assert got == [(6,), (5, 1), (4, 2), (3, 2, 1)]
        got = pt.enumerate_partitions(6, pt.PartitionConstraint(max_part=2))
        assert all(max(p) <= 2 for p in got)
        assert pt.enumerate_partitions(
            5, pt.PartitionConstraint(allowed_parts=frozenset({4}))
        ) == []


class TestDeMorgan:
    def test_table_values(self):
        for (x, y), expected in DEMORGAN_TABLE.items():
            assert pt.demorgan_u(x, y) == expected

    def test_u10_3_is_8(self):
        assert pt.demorgan_u(10, 3) == 8

    def test_u_x_1_is_one(self):
        for x in range(1, 30):
            assert pt.demorgan_u(x, 1) == 1

    def test_row_sums_are_p_x(self):
        for x in range(1, 21):
            assert sum(pt.demorgan_u(x, y) for y in range(1, x + 1)) == pt.count_partitions(x)

    def test_exact_greatest_part_reading(self):
        for x in range(1, 13):
            for y in range(1, x + 1):
                oracle = sum(1 for p in brute_partitions(x) if p and p[0] == y)
                assert pt.demorgan_u(x, y) == oracle

    def test_euler_duality_with_warburton(self):
        for x in range(1, 21):
            for y in range(1, x + 1):
                assert pt.demorgan_u(x, y) == pt.warburton_count(x, y, 1)


class TestClosedForms:
    def test_u2(self):
        assert pt.closed_form_u2(5) == 2
        assert pt.closed_form_u2(2) == 1
        assert pt.closed_form_u2(101) == pt.demorgan_u(101, 2) == 50

    def test_u2_matches_recurrence_to_200(self):
        for x in range(2, 201):
            assert pt.closed_form_u2(x) == pt.demorgan_u(x, 2)

    def test_u3(self):
        assert pt.closed_form_u3(10) == 8
        assert pt.closed_form_u3(3) == 1
        assert pt.closed_form_u3(60) == pt.demorgan_u(60, 3) == 300

    def test_u3_matches_recurrence_to_200(self):
        for x in range(3, 201):
            assert pt.closed_form_u3(x) == pt.demorgan_u(x, 3)

    def test_u3_periodic_table_matches_root_of_unity_form(self):
        # beta^x + gamma^x is 2 when 3 | x and -1 otherwise.
        for x in range(0, 6):
            root_sum = 2 if x % 3 == 0 else -1
            assert pt._U3_PERIODIC[x] == -7 - 9 * (-1) ** x + 8 * root_sum

    def test_u3_is_nearest_integer_to_x2_over_12(self):
        for x in range(3, 201):
            nearest = int(round(x * x / 12))
            assert pt.closed_form_u3(x) == nearest


class TestWarburton:
    def test_101_example_both_routes(self):
        assert pt._warburton_route1(31, 5, 3) == 101
        assert pt._warburton_route2(31, 5, 3) == 101
        assert pt.warburton_count(31, 5, 3) == 101

    def test_route2_partial_sums(self):
        # [16, z_1] for z = 0..5 are 0, 1, 8, 21, 34, 37
        values = [pt.count_exact_parts(16, z) for z in range(6)]
        assert values == [0, 1, 8, 21, 34, 37]

    def test_all_parts_equal_h(self):
        for p in range(1, 6):
            for h in range(1, 5):
                assert pt.warburton_count(p * h, p, h) == 1

    def test_brute_force_agreement(self):
        for n in range(0, 18):
            for p in range(0, 6):
                for h in range(1, 4):
                    oracle = sum(
                        1
                        for part in brute_partitions(n)
                        if len(part) == p and all(v >= h for v in part)
                    )
                    assert pt.warburton_count(n, p, h) == oracle

    def test_table8_row_12(self):
        row = tuple(pt.warburton_count(12, p, 1) for p in range(1, 13))
        assert row == WARBURTON_ROW_12
        assert sum(row) == 77


class TestCayley:
    def test_p12_of_5(self):
        assert pt.cayley_denumerant([1, 2], 5) == 3

    def test_p1(self):
        for n in range(10):
            assert pt.cayley_denumerant([1], n) == 1

    def test_p123_of_6(self):
        oracle = sum(
            1
            for a in range(7)
            for b in range(4)
            for c in range(3)
            if a + 2 * b + 3 * c == 6
        )
        assert oracle == 7
        assert pt.cayley_denumerant([1, 2, 3], 6) == 7

    def test_closed_form_matches_dp(self):
        for q in range(0, 60):
            assert pt.cayley_denumerant([1, 2], q) == pt.cayley_p12_closed_form(q)


class TestConjugate:
    def test_hand_example(self):
        assert pt.conjugate((4, 2, 1)) == (3, 2, 1, 1)

    def test_empty(self):
        assert pt.conjugate(()) == ()

    def test_involution(self):
        for n in range(13):
            for p in brute_partitions(n):
                assert pt.conjugate(pt.conjugate(p)) == p


class TestModular:
    def test_mod4(self):
        assert pt.modular_partition((8, 5, 2, 1), 4) == [(4, 4), (4, 1), (2,), (1,)]

    def test_mod1_unary(self):
        assert pt.modular_partition((3, 2), 1) == [(1, 1, 1), (1, 1)]

    def test_mod3(self):
        assert pt.modular_partition((8, 5, 2, 1), 3) == [(3, 3, 2), (3, 2), (2,), (1,)]

    def test_full_table_for_8521(self):
        expected = {
            1: [(1,) * 8, (1,) * 5, (1, 1), (1,)],
            2: [(2, 2, 2, 2), (2, 2, 1), (2,), (1,)],
            3: [(3, 3, 2), (3, 2), (2,), (1,)],
            4: [(4, 4), (4, 1), (2,), (1,)],
            5: [(5, 3), (5,), (2,), (1,)],
            6: [(6, 2), (5,), (2,), (1,)],
            7: [(7, 1), (5,), (2,), (1,)],
            8: [(8,), (5,), (2,), (1,)],
        }
        for m, rows in expected.items():
            assert pt.modular_partition((8, 5, 2, 1), m) == rows

    def test_rows_sum_to_parts(self):
        for m in range(1, 9):
            for row, part in zip(pt.modular_partition((9, 4, 3), m), (9, 4, 3)):
                assert sum(row) == part


class TestParity:
    def test_first_20_macmahon_digits(self):
        assert pt.macmahon_digits(20) == "10111110000111011101"

    def test_parity_1000_odd(self):
        assert pt.parity_p(1000) == "odd"

    def test_parity_4(self):
        assert pt.parity_p(4) == "odd"


class TestPerfect:
    def test_421_is_perfect(self):
        assert pt.is_perfect((4, 2, 1))

    def test_enumerate_perfect_1(self):
        assert pt.enumerate_perfect(1) == [(1,)]

    def test_enumerate_perfect_7(self):
        got = pt.enumerate_perfect(7)
        assert len(got) == 4
        assert all(pt.is_perfect(p) for p in got)
        brute = [p for p in brute_partitions(7) if pt.is_perfect(p)]
        assert sorted(got) == sorted(brute)

    def test_completeness_to_30(self):
        for n in range(1, 31):
            brute = sorted(p for p in brute_partitions(n) if pt.is_perfect(p))
            assert sorted(pt.enumerate_perfect(n)) == brute

    def test_subperfect(self):
        assert pt.is_subperfect((3, 1))
        assert not pt.is_subperfect((2, 1))


class TestScale:
    def test_binary(self):
        scale = pt.scale_of_numeration((1, 1, 1))
        assert scale.place_values == (1, 2, 4)
        assert scale.limit == 7
        assert pt.is_perfect(scale.partition())

    def test_decimal_two_digit(self):
        scale = pt.scale_of_numeration((9, 9))
        assert scale.limit == 99
        seen = set()
        for v in range(100):
            d = scale.digits(v)
            assert all(di <= a for di, a in zip(d, scale.alphas))
            assert d not in seen
            seen.add(d)
            assert sum(di * p for di, p in zip(d, scale.place_values)) == v

    def test_single_place(self):
        scale = pt.scale_of_numeration((5,))
        assert scale.limit == 5
        assert scale.partition() == (1, 1, 1, 1, 1)


class TestGeneralizedEuler:
    def brute_counts(self, ps, n):
        allowed = [v for v in range(1, n + 1) if all(v % p for p in ps)]
        a = sum(
            1
            for r in range(len(allowed) + 1)
            for combo in itertools.combinations(allowed, r)
            if sum(combo) == n
        )
        odd = [v for v in allowed if v % 2]

        def count_b(remaining, cap_idx):
            if remaining == 0:
                return 1
            total = 0
            for i in range(cap_idx, len(odd)):
                if odd[i] <= remaining:
                    total += count_b(remaining - odd[i], i)
            return total

        return a, count_b(n, 0)

    def test_empty_prime_set_n6(self):
        assert pt.generalized_euler_counts(set(), 6) == (4, 4)

    def test_n0(self):
        assert pt.generalized_euler_counts({2}, 0) == (1, 1)

    def test_p3_n9(self):
        a, b = pt.generalized_euler_counts({3}, 9)
        assert a == b
        assert (a, b) == self.brute_counts({3}, 9)

    def test_theorem_over_odd_prime_subsets(self):
        # The theorem needs odd primes: deleting multiples of 2 leaves the
        # odd numbers on both sides, and distinct-odd vs repeated-odd
        # partition counts differ already at n = 2.
        for ps in [set(), {3}, {5}, {7}, {3, 5}, {3, 7}, {5, 7}, {3, 5, 7}]:
            for n in range(26):
                a, b = pt.generalized_euler_counts(ps, n)
                assert a == b, (ps, n)

    def test_two_in_p_is_a_counterexample(self):
        # Witness that the naive "any set of primes" reading fails.
        assert pt.generalized_euler_counts({2}, 2) == (0, 1)


class TestRelationPatterns:
    def test_all_ge_reduces_to_warburton(self):
        for n in range(1, 14):
            for s in range(2, 5):
                assert pt.relation_pattern_count(n, [">="] * (s - 1)) == pt.warburton_count(n, s, 1)

    def test_unrestricted_is_binomial(self):
        import math

        for n in range(1, 12):
            for s in range(1, n + 1):
                assert pt.relation_pattern_count(n, ["*"] * (s - 1)) == math.comb(n - 1, s - 1)

    def test_strict_descents_are_distinct_partitions(self):
        oracle = len([p for p in brute_partitions(10) if len(p) == 3 and len(set(p)) == 3])
        assert oracle == 4
        assert pt.relation_pattern_count(10, [">", ">"]) == 4


class TestPlanePartitions:
    def test_thirteen_of_four(self):
        got = pt.enumerate_plane_partitions(4)
        assert len(got) == 13
        assert len(set(got)) == 13
        for pp in got:
            assert sum(sum(r) for r in pp) == 4
            pt.check_plane_partition(pp)

    def test_one_of_one(self):
        assert pt.enumerate_plane_partitions(1) == [((1,),)]

    def test_gf_agreement(self):
        for n in range(16):
            assert pt.count_plane_partitions(n) == len(pt.enumerate_plane_partitions(n))

    def test_boxed_reduction_to_row_partitions(self):
        for n in range(7):
            for l in range(1, 5):
                for cmax in range(1, 5):
                    oracle = sum(
                        1
                        for p in brute_partitions(n, max_part=l)
                        if len(p) <= cmax
                    )
                    assert pt.count_boxed_plane_partitions(n, l, 1, cmax) == oracle

    def test_boxed_large_box_gives_13(self):
        assert pt.count_boxed_plane_partitions(4, 4, 4, 4) == 13
        assert pt.count_boxed_plane_partitions(4, None, 4, 4) == 13

    def test_boxed_brute_example(self):
        # direct enumeration over 2x2 grids with entries <= 2
        oracle = 0
        for a in range(3):
            for b in range(min(a, 2) + 1):
                for c in range(min(a, 2) + 1):
                    for d in range(min(b, c) + 1):
                        if a + b + c + d == 6:
                            oracle += 1
        assert pt.count_boxed_plane_partitions(6, 2, 2, 2) == oracle

    def test_boxed_cap_guard(self):
        with pytest.raises(ValueError):
            pt.count_boxed_plane_partitions(4, 2, 100, 100)


class TestXeS:
    def test_published_low_coefficients(self):
        poly = pt.xy_symmetric_two_layer_poly(4)
        assert poly[7] == 1
        assert poly[8] == 2
        assert poly[11] == 3
        assert poly[32] == 1

    def test_full_published_polynomial(self):
        expected = {
            7: 1, 8: 2, 9: 1, 10: 2, 11: 3, 12: 4, 13: 4, 14: 5, 15: 5,
            16: 7, 17: 5, 18: 6, 19: 6, 20: 7, 21: 5, 22: 5, 23: 4,
            24: 5, 25: 3, 26: 3, 27: 2, 28: 2, 29: 1, 30: 1, 31: 1, 32: 1,
        }
        assert pt.xy_symmetric_two_layer_poly(4) == expected

    def test_cell_enumeration_oracle(self):
        for i in range(1, 5):
            assert pt.xy_symmetric_two_layer_poly(i) == pt.xy_symmetric_cell_enumeration(i)

    def test_count_accessor(self):
        assert pt.xy_symmetric_count(11, 4) == 3
        assert pt.xy_symmetric_count(6, 4) == 0
