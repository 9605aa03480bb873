import math
import random
from fractions import Fraction

import pytest

from combanal import patterns as pa
from combanal import recreations as rc
from profile_support import random_profile

F = Fraction


class TestClassification:
    def test_straight_is_degenerate(self):
        assert pa.classify_edge(pa.STRAIGHT) == "SU"

    def test_centered_sawtooth_is_u(self):
        saw = pa.EdgeProfile.from_coords(
            [(0, 0), (F(1, 4), F(1, 4)), (F(3, 4), F(-1, 4)), (1, 0)]
        )
        assert pa.classify_edge(saw) == "U"
        assert pa.point_profile(saw) == saw

    def test_centered_bump_is_s(self):
        bump = pa.EdgeProfile.from_coords([(0, 0), (F(1, 2), F(1, 3)), (1, 0)])
        assert pa.classify_edge(bump) == "S"
        assert pa.mirror_profile(bump) == bump

    def test_asymmetric_two_bump_is_v(self):
        two = pa.EdgeProfile.from_coords(
            [(0, 0), (F(1, 4), F(1, 3)), (F(1, 2), F(0)), (F(5, 8), F(-1, 5)), (1, 0)]
        )
        assert pa.classify_edge(two) == "V"
        assert pa.mirror_profile(two) != two
        assert pa.point_profile(two) != two
        # the half-turn and mirror images are the same cut seen from the
        # two sides of the edge
        assert pa.point_profile(two) == pa.negate_profile(pa.mirror_profile(two))

    def test_operator_identities_on_200_random_profiles(self):
        rng = random.Random(99)
        for i in range(200):
            sym = (None, "S", "U")[i % 3]
            e = random_profile(rng, sym)
            assert pa.mirror_profile(pa.mirror_profile(e)) == e
            assert pa.point_profile(pa.point_profile(e)) == e
            assert pa.point_profile(e) == pa.negate_profile(pa.mirror_profile(e))
            cls = pa.classify_edge(e)
            if cls in ("S", "SU"):
                assert pa.mirror_profile(e) == e
            if cls in ("U", "SU"):
                assert pa.point_profile(e) == e
            if cls == "V":
                assert pa.mirror_profile(e) != e != pa.point_profile(e)

    def test_rejects_bad_endpoints_and_crossings(self):
        with pytest.raises(ValueError):
            pa.EdgeProfile.from_coords([(0, 0), (F(1, 2), F(1, 2))])
        with pytest.raises(ValueError):
            pa.EdgeProfile.from_coords(
                [(0, 0), (F(3, 4), F(1, 4)), (F(1, 4), F(-1, 8)), (F(1, 2), F(1, 2)), (1, 0)]
            )


class TestRepeatTiles:
    def test_plain_square(self):
        tile = pa.square_translation_tile()
        assert tile.area_offset() == 0
        assert [tuple(map(round, v)) for v in tile.boundary()]  # converts cleanly

    def test_cairo_tile_builds(self):
        tile = pa.cairo_tile()
        assert tile.area_offset() == 0
        assert tile.contact == (3, 2, 1, 0)

    def test_area_preserved_for_any_legal_profile_set(self):
        rng = random.Random(7)
        for _ in range(20):
            p0 = random_profile(rng)
            p1 = random_profile(rng)
            tile = pa.build_repeat_tile(
                "square",
                (2, 3, 0, 1),
                (p0, p1, pa.point_profile(p0), pa.point_profile(p1)),
            )
            assert tile.area_offset() == 0

    def test_illegal_self_pair_rejected_with_edge_names(self):
        bump = pa.EdgeProfile.from_coords([(0, 0), (F(1, 2), F(1, 3)), (1, 0)])
        with pytest.raises(pa.ContactError) as err:
            pa.build_repeat_tile("square", (0, 1, 2, 3), (bump,) * 4)
        assert "edge 0" in str(err.value)

    def test_illegal_pair_rejected(self):
        bump = pa.EdgeProfile.from_coords([(0, 0), (F(1, 2), F(1, 3)), (1, 0)])
        saw = pa.EdgeProfile.from_coords(
            [(0, 0), (F(1, 4), F(1, 4)), (F(3, 4), F(-1, 4)), (1, 0)]
        )
        with pytest.raises(pa.ContactError) as err:
            pa.build_repeat_tile("square", (2, 3, 0, 1), (bump, saw, saw, saw))
        assert "0-2" in str(err.value)

    def test_bad_involution_rejected(self):
        with pytest.raises(pa.ContactError):
            pa.build_repeat_tile("square", (1, 2, 3, 0), (pa.STRAIGHT,) * 4)


class TestTilings:
    def test_square_grid_49(self):
        res = pa.generate_tiling(pa.square_translation_tile(), 3)
        assert len(res.placements) == 49
        assert res.verified

    def test_cairo_extent_2(self):
        res = pa.generate_tiling(pa.cairo_tile(), 2)
        assert res.verified
        assert len(res.placements) == 25

    def test_hexagon_base(self):
        tile = pa.build_repeat_tile("hexagon", (3, 4, 5, 0, 1, 2), (pa.STRAIGHT,) * 6)
        res = pa.generate_tiling(tile, 2)
        assert res.verified

    def test_triangle_base(self):
        tile = pa.build_repeat_tile("triangle", (0, 1, 2), (pa.STRAIGHT,) * 3)
        res = pa.generate_tiling(tile, 2)
        assert res.verified

    def test_regular_bases_verify_up_to_extent_5(self):
        for base, contact in (
            ("square", (2, 3, 0, 1)),
            ("triangle", (0, 1, 2)),
            ("hexagon", (3, 4, 5, 0, 1, 2)),
        ):
            tile = pa.build_repeat_tile(base, contact, (pa.STRAIGHT,) * pa.BASES[base])
            for extent in (1, 3, 5):
                assert pa.generate_tiling(tile, extent).verified, (base, extent)

    def test_svg_and_json_deterministic(self):
        res1 = pa.generate_tiling(pa.cairo_tile(), 2)
        res2 = pa.generate_tiling(pa.cairo_tile(), 2)
        assert res1.to_svg() == res2.to_svg()
        assert res1.to_placement_json() == res2.to_placement_json()
        assert res1.to_svg().startswith('<?xml version="1.0"')
        assert res1.to_svg().count("<path") == len(res1.placements)

    def test_reflection_contact_refused_by_tiler(self):
        # zero-net-area V profile: tall narrow bump up, shallow wide dip
        lop = pa.EdgeProfile.from_coords(
            [(0, 0), (F(1, 16), 1), (F(1, 8), 0), (F(1, 2), 0), (F(3, 4), F(-1, 4)), (1, 0)]
        )
        assert pa.classify_edge(lop) == "V"
        tile = pa.build_repeat_tile(
            "square",
            (2, 3, 0, 1),
            (lop, pa.STRAIGHT, pa.mirror_profile(lop), pa.STRAIGHT),
        )  # pair 0-2 mates by mirror: legal to build, not to tile directly
        with pytest.raises(pa.TilingError):
            pa.generate_tiling(tile, 2)

    def test_contact_systems_shared_with_involution_count(self):
        for base, n in (("triangle", 3), ("square", 4), ("hexagon", 6)):
            systems = pa.contact_systems_for(base)
            assert len(systems) == rc.contact_system_count(n)

    def test_achievable_square_systems_reported(self):
        achievable = pa.achievable_square_contact_systems()
        # the plain translation system 1-3, 2-4 is realizable
        assert (2, 3, 0, 1) in achievable
        # all reported systems are involutions among the ten
        assert set(achievable) <= set(rc.enumerate_contact_systems(4))


class TestAngleLaw:
    def test_any_triangle(self):
        assert pa.angle_distribution_check([F(1, 2), F(1, 3), F(1, 6)])
        assert pa.angle_distribution_check([F(1, 3)] * 3)

    def test_square_and_quadrilaterals(self):
        assert pa.angle_distribution_check([F(1, 2)] * 4)
        assert pa.angle_distribution_check([F(1, 3), F(2, 3), F(1, 2), F(1, 2)])

    def test_regular_pentagon_fails(self):
        assert not pa.angle_distribution_check([F(3, 5)] * 5)

    def test_cairo_pentagon_passes(self):
        # angles 2pi/3 twice, pi/2 twice, 2pi/3: the equilateral pentagon
        # of the four-way paving: 120, 120, 90, 120, 90 degrees
        angles = [F(2, 3), F(2, 3), F(1, 2), F(2, 3), F(1, 2)]
        assert pa.angle_distribution_check(angles)


class TestDeficiency:
    def test_cube(self):
        report = pa.cube_deficiency_report()
        assert report.euler_ok
        assert report.equal
        assert report.vertex_sum == pytest.approx(12 * math.pi)
        assert report.edge_sum == pytest.approx(12 * math.pi)

    def test_tetrahedron(self):
        report = pa.tetrahedron_deficiency_report()
        assert report.euler_ok
        assert report.equal
        assert report.vertex_sum == pytest.approx(22.9276, abs=1e-3)

    def test_perturbation_detected(self):
        bad = pa.euler_deficiency_check(
            [math.pi / 2] * 8, [math.pi / 2 * 0.5] * 12, faces=6
        )
        assert not bad.equal


class TestSchoenflies:
    def test_four_congruent_isosceles_faces(self):
        tetra = pa.schoenflies_tetrahedron()
        faces = tetra.face_edge_multisets()
        assert len(set(faces)) == 1
        lengths = faces[0]
        assert lengths[0] == lengths[1] != lengths[2]  # isosceles

    def test_edge_ratio_squared_is_4_3(self):
        tetra = pa.schoenflies_tetrahedron()
        squares = sorted(set(tetra.edge_lengths_squared()))
        assert Fraction(squares[1], squares[0]) == Fraction(4, 3)

    def test_volume_positive(self):
        tetra = pa.schoenflies_tetrahedron()
        assert tetra.volume() == Fraction(2, 3)

    def test_prism_variant_is_the_other_disphenoid(self):
        tetra = pa.prism_midpoint_tetrahedron()
        faces = tetra.face_edge_multisets()
        assert len(set(faces)) == 1
        squares = sorted(set(tetra.edge_lengths_squared()))
        assert Fraction(squares[1], squares[0]) == Fraction(5, 2)
        assert tetra.volume() > 0
