import math

import numpy as np
import pytest

from catkit.complexes import AngledComplex
from catkit.errors import (
    InvalidTriangleError,
    RealizationError,
    UnusableComplexError,
    WrongArityError,
)
from catkit.metric import (
    approx_distance,
    project_to_path,
    realize,
    shadow_lemma_test,
    shadow_member,
    shortest_path,
)
from catkit.model import geodesic_point, model_distance



class TestRealize:
    def test_two_glued_unit_triangles(self, flat_strip):
        M, _ = flat_strip
        assert len(M.base.faces) == 4
        # stored angles equal the model angles exactly
        from catkit.model import comparison_angles

        for f, face in enumerate(M.base.faces):
            sides = tuple(M.edge_lengths[e] for e, _ in face)
            tri = comparison_angles(sides, M.kappa.get(f, 0.0))
            expected = (tri.beta, tri.gamma, tri.alpha)
            for i in range(3):
                assert abs(M.base.corner_angles[(f, i)] - expected[i]) < 1e-9

    def test_invalid_sides(self):
        base = AngledComplex(3, ((0, 1), (1, 2), (2, 0)),
                             (((0, 1), (1, 1), (2, 1)),))
        with pytest.raises(InvalidTriangleError):
            realize(base, {0: 1.0, 1: 1.0, 2: 3.0})

    def test_angle_mismatch(self):
        base = AngledComplex(3, ((0, 1), (1, 2), (2, 0)),
                             (((0, 1), (1, 1), (2, 1)),),
                             {(0, 0): 1.3})
        with pytest.raises(RealizationError):
            realize(base, {0: 1.0, 1: 1.0, 2: 1.0})

    def test_non_triangular_rejected(self):
        base = AngledComplex(1, ((0, 0), (0, 0)),
                             (((0, 1), (1, 1), (0, -1), (1, -1)),))
        with pytest.raises(WrongArityError):
            realize(base, {0: 1.0, 1: 1.0})


class TestApproxDistance:
    def test_same_face_exact(self, flat_strip):
        M, locate = flat_strip
        p = locate((0.2, 0.1))
        q = locate((0.9, 0.4))
        d = approx_distance(M, p, q, 0.3)
        assert d == pytest.approx(math.hypot(0.7, 0.3), abs=1e-12)

    def test_strip_opposite_corners(self, flat_strip):
        M, _ = flat_strip
        d = approx_distance(M, M.vertex_location(0), M.vertex_location(5), 0.05)
        assert d == pytest.approx(math.sqrt(5), rel=0.02)

    def test_h2_quad_within_two_percent(self, h2_quad):
        loc_x, X = h2_quad.locate(0, (0.25, 0.55, 0.20))
        loc_y, Y = h2_quad.locate(1, (0.15, 0.25, 0.60))
        exact = model_distance(X, Y)
        d = approx_distance(h2_quad.M, loc_x, loc_y, 0.05)
        assert d == pytest.approx(exact, rel=0.02)

    def test_symmetry(self, flat_strip):
        M, locate = flat_strip
        p = locate((0.31, 0.77))
        q = locate((1.83, 0.22))
        assert abs(approx_distance(M, p, q, 0.1)
                   - approx_distance(M, q, p, 0.1)) < 1e-12

    def test_triangle_inequality_with_slack(self, flat_strip):
        M, locate = flat_strip
        h = 0.1
        rng = np.random.default_rng(5)
        for _ in range(20):
            pts = [locate((float(rng.uniform(0.05, 1.95)),
                           float(rng.uniform(0.05, 0.95)))) for _ in range(3)]
            d_ab = approx_distance(M, pts[0], pts[1], h)
            d_bc = approx_distance(M, pts[1], pts[2], h)
            d_ac = approx_distance(M, pts[0], pts[2], h)
            assert d_ac <= d_ab + d_bc + 4 * h

    def test_upper_bound_property(self, flat_strip):
        M, locate = flat_strip
        p = locate((0.1, 0.2))
        q = locate((1.9, 11.0 / 15.0))
        exact = math.hypot(1.8, 11.0 / 15.0 - 0.2)
        for h in (0.2, 0.1, 0.05):
            assert approx_distance(M, p, q, h) >= exact - 1e-12


class TestShortestPath:
    def test_path_length_matches_distance(self, flat_strip):
        M, locate = flat_strip
        p = locate((0.15, 0.65))
        q = locate((1.78, 0.3))
        path = shortest_path(M, p, q, 0.1)
        assert path.length == pytest.approx(approx_distance(M, p, q, 0.1),
                                            abs=1e-12)

    def test_point_at_endpoints(self, flat_strip):
        M, locate = flat_strip
        p = locate((0.15, 0.65))
        q = locate((1.78, 0.3))
        path = shortest_path(M, p, q, 0.1)
        start = path.point_at(0.0)
        end = path.point_at(path.length)
        f0 = next(iter(start.reps))
        assert f0 in p.reps
        d0 = min(model_distance(a, b) for a in start.reps[f0] for b in p.reps[f0])
        assert d0 < 1e-9
        f1 = next(iter(end.reps))
        d1 = min(model_distance(a, b) for a in end.reps[f1] for b in q.reps[f1])
        assert d1 < 1e-9


class TestProjection:
    def test_flat_foot_of_perpendicular(self, flat_rect):
        h = 0.1
        gamma = flat_rect.bottom_path()
        x = flat_rect.locate((3.3, 0.9))
        proj = project_to_path(flat_rect.M, x, gamma, h)
        assert abs(proj.t - 3.3) <= h
        assert proj.distance == pytest.approx(0.9, abs=2 * h)

    def test_point_on_path_projects_to_itself(self, flat_rect):
        gamma = flat_rect.bottom_path()
        x = flat_rect.locate((4.0, 0.0))
        proj = project_to_path(flat_rect.M, x, gamma, 0.1)
        assert abs(proj.t - 4.0) < 1e-6
        assert proj.distance < 1e-6

    def test_hyperbolic_foot(self, h2_quad):
        # gamma: bottom side of the quad; oracle from the global chart
        M = h2_quad.M
        A, B = h2_quad.chart_corners[0], h2_quad.chart_corners[1]
        from catkit.metric import GeodesicPath

        chart = M.charts[0]
        gamma = GeodesicPath(((0, chart[0], chart[1]),),
                             (M.vertex_location(0), M.vertex_location(1)))
        loc_x, X = h2_quad.locate(0, (0.2, 0.3, 0.5))
        # continuous oracle on the chart segment
        seg_len = model_distance(A, B)
        lo, hi = 0.0, seg_len
        f = lambda s: model_distance(X, geodesic_point(A, B, s))
        for _ in range(200):
            m1, m2 = lo + (hi - lo) / 3, hi - (hi - lo) / 3
            if f(m1) <= f(m2):
                hi = m2
            else:
                lo = m1
        t_star, d_star = 0.5 * (lo + hi), f(0.5 * (lo + hi))
        proj = project_to_path(M, loc_x, gamma, 0.05)
        assert proj.distance == pytest.approx(d_star, rel=0.02)
        assert abs(proj.t - t_star) < 0.1


class TestShadowMember:
    def test_z_on_segment(self, flat_rect):
        o = flat_rect.locate((0.0, 0.0))
        y = flat_rect.locate((10.0, 0.0))
        z = flat_rect.locate((5.0, 0.0))
        res = shadow_member(flat_rect.M, o, y, z, 0.05, 0.2)
        assert res and res.min_distance < 0.05

    def test_exact_point_segment_distance(self, flat_rect):
        o = flat_rect.locate((0.0, 0.0))
        y = flat_rect.locate((10.0, 0.0))
        z = flat_rect.locate((5.0, 3.0))
        h = 0.2
        assert not shadow_member(flat_rect.M, o, y, z, 2.0, h)
        assert shadow_member(flat_rect.M, o, y, z, 3.1, h)

    def test_o_equals_y(self, flat_rect):
        o = flat_rect.locate((1.0, 1.0))
        z = flat_rect.locate((8.0, 1.0))
        res = shadow_member(flat_rect.M, o, o, z, 1.0, 0.2)
        assert not res
        assert res.min_distance == pytest.approx(7.0, abs=0.1)


def chart_line_distance(p, u, v):
    """Closed-form distance from a hyperboloid point to the geodesic line
    through u and v (Minkowski normal construction)."""
    n = (u.coords[1] * v.coords[2] - u.coords[2] * v.coords[1],
         u.coords[0] * v.coords[2] - u.coords[2] * v.coords[0],
         -(u.coords[0] * v.coords[1] - u.coords[1] * v.coords[0]))
    norm = math.sqrt(n[1] * n[1] + n[2] * n[2] - n[0] * n[0])
    pairing = p.coords[0] * n[0] - p.coords[1] * n[1] - p.coords[2] * n[2]
    return math.asinh(abs(pairing) / norm)


class TestContractionDiameter:
    def test_fully_hyperbolic_patch(self, h2_quad):
        from catkit.constants import ContractionParams, contraction_bound
        from catkit.metric import GeodesicPath, MarkedGeodesic, contraction_diameter_test

        M = h2_quad.M
        chart = M.charts[0]
        gamma = GeodesicPath(((0, chart[0], chart[1]),),
                             (M.vertex_location(0), M.vertex_location(1)))
        length = gamma.length
        params = ContractionParams(0.5, 1.2, r_min=1.2)
        mg = MarkedGeodesic(gamma, (0.25, length - 0.25), params)
        report = contraction_diameter_test(M, mg, trials=100, seed=9, h=0.1)
        bound = contraction_bound(params)
        assert report.passed
        # huge margin: the quad has diameter ~2.5 against a bound of ~110
        assert report.max_diameter < 0.05 * bound

    def test_projection_distance_matches_closed_form(self, h2_quad):
        from catkit.metric import GeodesicPath

        M = h2_quad.M
        A, B = h2_quad.chart_corners[0], h2_quad.chart_corners[1]
        chart = M.charts[0]
        gamma = GeodesicPath(((0, chart[0], chart[1]),),
                             (M.vertex_location(0), M.vertex_location(1)))
        loc, X = h2_quad.locate(0, (0.3, 0.4, 0.3))
        proj = project_to_path(M, loc, gamma, 0.05)
        assert proj.distance == pytest.approx(chart_line_distance(X, A, B),
                                              rel=0.02)


class TestNegativeCurvaturePullsGeodesics:
    def test_path_through_beads_hugs_the_marks(self, beaded3):
        # crossing a hyperbolic fan through its center is shorter than going
        # around the rim, so high-to-high geodesics dive toward the marks
        from catkit.metric import _project_field, shortest_path

        M, mg = beaded3
        vertical = [e for e in range(len(M.base.edges))
                    if abs(M.edge_lengths[e] - 1.0) < 1e-12]
        x = M.edge_location(0, 0.97)
        y = M.edge_location(vertical[-2], 0.97)
        h = 0.05
        path = shortest_path(M, x, y, h)
        mesh = M.mesh(h)
        field = mesh.dijkstra(mg.path.point_at(mg.marks[1]))
        clearance = _project_field(field, path, h).distance
        assert clearance < 0.15
        # and the certificate builder therefore excludes the marks
        from catkit.prop2 import build_prop2_certificate

        cert = build_prop2_certificate(M, mg, x, y, h=h)
        assert cert.n_marks == 0
        assert len(cert.notes) >= 3


class TestShadowLemmaTest:
    def test_no_marks_rejected(self, flat_rect):
        with pytest.raises(UnusableComplexError):
            shadow_lemma_test(flat_rect.M, 1.0, 1.0, 0.5, 5, 0)

    def test_generous_k_no_counterexamples(self, beaded3):
        M, mg = beaded3
        rep = shadow_lemma_test(M, k_candidate=4.0, radius=1.0, epsilon=0.45,
                                trials=40, seed=7, h=0.2)
        assert rep.n_counterexamples == 0

    def test_k_zero_flat_dominant_fails(self):
        from catkit.generators import gen_beaded_strip

        M, mg = gen_beaded_strip(2, 6.0, 0.3)
        rep = shadow_lemma_test(M, k_candidate=0.0, radius=2.0, epsilon=0.3,
                                trials=40, seed=3, h=0.2)
        assert rep.n_counterexamples >= 1
