import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import brute_force_crossing_pairs

from stickcert.geom import (
    Direction,
    GeometryError,
    IrregularDirectionError,
    NonMorseError,
    Polygon3,
    check_equilateral,
    check_regular,
    crossing_pairs,
    direction_sweep,
    edge_lengths_squared,
    find_regular_direction,
    local_maxima_count,
    local_minima_count,
    move_vertex,
    project_to_diagram,
)
from stickcert.diagram import validate
from stickcert.store import load_fixture_polygon


class TestPolygon3:
    def test_too_few_vertices(self):
        with pytest.raises(GeometryError):
            Polygon3(((0, 0, 0), (1, 0, 0)))

    def test_zero_edge_rejected(self):
        with pytest.raises(GeometryError, match="zero-length"):
            Polygon3(((0, 0, 0), (0, 0, 0), (1, 1, 1), (2, 0, 0)))

    def test_closing_zero_edge_rejected(self):
        with pytest.raises(GeometryError, match="zero-length"):
            Polygon3(((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 0)))

    def test_collinear_triple_rejected(self):
        with pytest.raises(GeometryError, match="collinear"):
            Polygon3(((0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0)))

    def test_scale_positive(self):
        with pytest.raises(GeometryError):
            Polygon3(((0, 0, 0), (1, 0, 0), (0, 1, 0)), scale=0)


class TestEdgeLengths:
    def test_table_first_edge_exactly_one(self):
        poly = load_fixture_polygon("13n592")
        assert edge_lengths_squared(poly)[0] == 1

    def test_unit_triangle(self):
        tri = Polygon3(((0, 0, 0), (1, 0, 0), (0, 1, 0)), scale=1)
        assert edge_lengths_squared(tri) == [1, 2, 1]

    def test_full_published_polygon_near_unit(self):
        # frozen from direct big-integer evaluation of the published rows
        poly = load_fixture_polygon("13n592")
        for sq in edge_lengths_squared(poly):
            assert abs(sq - 1) < Fraction(2, 10**6)


class TestEquilateral:
    def test_published_equilateral(self):
        poly = load_fixture_polygon("15n41127")
        rep = check_equilateral(poly, Fraction(1, 10**5))
        assert rep.equilateral
        assert rep.max_rel_deviation < Fraction(1, 10**6)

    def test_doubled_edge_fails(self):
        sq = Polygon3(((0, 0, 0), (2, 0, 1), (2, 2, 0), (0, 1, 1)), scale=1)
        rep = check_equilateral(sq, Fraction(1, 1000))
        assert not rep.equilateral

    def test_moved_vertex_breaks_equilaterality(self):
        poly = load_fixture_polygon("15n41127")
        moved = move_vertex(poly, 8, (3708061, -732600, 1785942))
        assert not check_equilateral(moved).equilateral

    def test_verdict_is_exact_not_float(self):
        # deviation exactly at tolerance: cross-multiplied verdict includes it
        tri = Polygon3(((0, 0, 0), (100, 0, 0), (0, 100, 0)), scale=1)
        report = check_equilateral(tri, Fraction(1))
        assert report.equilateral  # sqrt(2) within factor 2 of the mean


class TestMoveVertex:
    def test_identity_move(self, trefoil_polygon):
        same = move_vertex(trefoil_polygon, 2, trefoil_polygon.vertices[2])
        assert same.vertices == trefoil_polygon.vertices

    def test_move_to_successor_rejected(self, trefoil_polygon):
        with pytest.raises(GeometryError):
            move_vertex(trefoil_polygon, 0, trefoil_polygon.vertices[1])

    def test_out_of_range(self, trefoil_polygon):
        with pytest.raises(GeometryError):
            move_vertex(trefoil_polygon, 6, (0, 0, 0))

    def test_figure5_polygon(self):
        poly = load_fixture_polygon("15n41127")
        moved = move_vertex(poly, 8, (3708061, -732600, 1785942))
        assert moved.vertices[8] == (3708061, -732600, 1785942)
        assert moved.vertices[:8] == poly.vertices[:8]
        assert moved.vertices[9:] == poly.vertices[9:]


class TestDirection:
    def test_basis_orthogonal(self):
        d = Direction.from_vector((3, -5, 7))
        assert all(isinstance(c, int) for c in d.u + d.v)

    def test_zero_rejected(self):
        with pytest.raises(GeometryError):
            Direction.from_vector((0, 0, 0))

    def test_bad_basis_rejected(self):
        with pytest.raises(GeometryError):
            Direction((1, 0, 0), (1, 1, 0), (0, 0, 1))


class TestRegularity:
    def test_fixture_direction_regular(self, trefoil_polygon):
        d, rep = find_regular_direction(trefoil_polygon, seed=0)
        assert rep.regular
        # independent re-check of the returned direction
        assert check_regular(trefoil_polygon, d).regular

    def test_in_plane_direction_rejected_for_planar(self, convex_decagon):
        d = Direction.from_vector((1, 0, 0))
        rep = check_regular(convex_decagon, d)
        assert not rep.regular
        assert rep.failure_kind in {
            "edge-parallel-to-d",
            "vertex-over-edge",
            "vertex-coincidence",
            "adjacent-height-tie",
            "triple-point",
        }

    def test_deterministic(self, trefoil_polygon):
        d1, _ = find_regular_direction(trefoil_polygon, seed=7)
        d2, _ = find_regular_direction(trefoil_polygon, seed=7)
        assert d1 == d2


class TestProjection:
    def test_convex_quadrilateral_no_crossings(self):
        quad = Polygon3(((0, 0, 0), (10, 0, 1), (10, 10, 0), (0, 10, 1)), scale=1)
        d, _ = find_regular_direction(quad, seed=0)
        assert project_to_diagram(quad, d).n_crossings == 0

    def test_trefoil_three_crossings_equal_signs(self, trefoil_polygon):
        # seed 3 projects the 6-stick trefoil minimally (frozen observation)
        d, _ = find_regular_direction(trefoil_polygon, seed=3)
        dg = project_to_diagram(trefoil_polygon, d)
        assert dg.n_crossings == 3
        assert len({x.sign for x in dg.crossings}) == 1
        assert validate(dg) is None

    def test_rejects_irregular_direction(self, convex_decagon):
        with pytest.raises(IrregularDirectionError):
            project_to_diagram(convex_decagon, Direction.from_vector((1, 0, 0)))

    def test_crossing_pairs_match_brute_force(self, trefoil_polygon):
        for seed in range(10):
            d, _ = find_regular_direction(trefoil_polygon, seed=seed)
            assert crossing_pairs(trefoil_polygon, d) == brute_force_crossing_pairs(
                trefoil_polygon, d
            )


class TestMaximaCounting:
    def test_convex_polygon_one_maximum(self, convex_decagon):
        d = Direction.from_vector((3, 7, 1))
        assert local_maxima_count(convex_decagon, d) == 1

    def test_equal_heights_non_morse(self, convex_decagon):
        with pytest.raises(NonMorseError):
            local_maxima_count(convex_decagon, Direction.from_vector((0, 0, 1)))

    def test_antipodal_symmetry(self, trefoil_polygon):
        for seed in range(20):
            d, _ = find_regular_direction(trefoil_polygon, seed=seed)
            anti = Direction.from_vector(tuple(-c for c in d.d))
            assert local_maxima_count(trefoil_polygon, d) == local_minima_count(
                trefoil_polygon, anti
            )

    def test_counts_in_range(self, trefoil_polygon):
        res = direction_sweep(trefoil_polygon, 2000, seed=5)
        assert 1 <= res.min_count <= res.max_count <= trefoil_polygon.n // 2


class TestSweep:
    def test_deterministic(self, trefoil_polygon):
        a = direction_sweep(trefoil_polygon, 1000, seed=11)
        b = direction_sweep(trefoil_polygon, 1000, seed=11)
        assert a == b

    def test_trefoil_bridge_superbridge(self, trefoil_polygon):
        # trefoil has bridge 2, superbridge 3; a 6-gon cannot exceed 3
        res = direction_sweep(trefoil_polygon, 5000, seed=3)
        assert res.min_count == 2
        assert res.max_count == 3
        assert local_maxima_count(trefoil_polygon, res.min_witness) == 2
        assert local_maxima_count(trefoil_polygon, res.max_witness) == 3

    def test_planar_convex_always_one(self, convex_decagon):
        res = direction_sweep(convex_decagon, 3000, seed=0)
        assert res.min_count == 1
        assert res.max_count == 1

    def test_ten_gon_capped_at_five(self):
        poly = load_fixture_polygon("13n592")
        res = direction_sweep(poly, 2000, seed=0)
        assert res.max_count <= 5

    def test_samples_validated(self, trefoil_polygon):
        with pytest.raises(GeometryError):
            direction_sweep(trefoil_polygon, 0)

    def test_bigint_path_matches_kernel(self, trefoil_polygon):
        # same draws routed through the exact big-integer fallback
        scaled = Polygon3(
            tuple(tuple(c * 10**14 for c in v) for v in trefoil_polygon.vertices),
            scale=1,
        )
        a = direction_sweep(trefoil_polygon, 300, seed=2)
        b = direction_sweep(scaled, 300, seed=2)
        assert (a.min_count, a.max_count) == (b.min_count, b.max_count)
        assert a.min_witness == b.min_witness
        assert a.max_witness == b.max_witness


@st.composite
def small_polygons(draw):
    n = draw(st.integers(min_value=4, max_value=8))
    verts = []
    for _ in range(n):
        verts.append(
            tuple(
                draw(st.integers(min_value=-15, max_value=15)) for _ in range(3)
            )
        )
    return verts


class TestRandomBattery:
    @settings(max_examples=60, deadline=None)
    @given(small_polygons(), st.integers(min_value=0, max_value=2**30))
    def test_projection_matches_brute_force(self, verts, seed):
        try:
            poly = Polygon3(tuple(verts), scale=1)
        except GeometryError:
            return
        try:
            d, _ = find_regular_direction(poly, seed=seed, max_rejections=20000)
        except GeometryError:
            return
        assert crossing_pairs(poly, d) == brute_force_crossing_pairs(poly, d)
        try:
            dg = project_to_diagram(poly, d)
        except GeometryError:
            return  # polygon not embedded: projection detects real intersections
        assert validate(dg) is None
        res = direction_sweep(poly, 50, seed=seed)
        assert res.max_count <= poly.n // 2
