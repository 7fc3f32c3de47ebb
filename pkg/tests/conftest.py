import math

import pytest

from catkit.complexes import AngledComplex
from catkit.generators import gen_beaded_strip
from catkit.metric import GeodesicPath, H2Patch, realize
from catkit.model import ModelPoint, model_distance


def flat_barycentric(corners, pt):
    """Barycentric weights of pt in a Euclidean triangle (affine-invariant,
    so they transfer to the congruent chart copy)."""
    (x0, y0), (x1, y1), (x2, y2) = corners
    det = (y1 - y2) * (x0 - x2) + (x2 - x1) * (y0 - y2)
    w0 = ((y1 - y2) * (pt[0] - x2) + (x2 - x1) * (pt[1] - y2)) / det
    w1 = ((y2 - y0) * (pt[0] - x2) + (x0 - x2) * (pt[1] - y2)) / det
    return (w0, w1, 1.0 - w0 - w1)


def hyp_combination(tri, weights):
    """Normalized Minkowski combination (equivariant under isometries)."""
    c = [sum(w * t.coords[k] for w, t in zip(weights, tri)) for k in range(3)]
    return ModelPoint.hyperboloid(*c)


class FlatRect:
    """Axis-aligned flat rectangle split along the (0,0)-(w,h) diagonal."""

    def __init__(self, width, height):
        self.width, self.height = width, height
        diag = math.hypot(width, height)
        edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
        lengths = {0: width, 1: height, 2: width, 3: height, 4: diag}
        faces = [((0, 1), (1, 1), (4, -1)), ((4, 1), (2, 1), (3, 1))]
        self.corners = [(0.0, 0.0), (width, 0.0), (width, height), (0.0, height)]
        self.face_corners = [
            [self.corners[0], self.corners[1], self.corners[2]],
            [self.corners[0], self.corners[2], self.corners[3]],
        ]
        base = AngledComplex(4, tuple(edges), tuple(faces))
        self.M = realize(base, lengths)

    def face_of(self, pt):
        # below the diagonal y/x <= h/w -> face 0
        x, y = pt
        if y * self.width <= x * self.height:
            return 0
        return 1

    def locate(self, pt):
        f = self.face_of(pt)
        return self.M.face_location(f, flat_barycentric(self.face_corners[f], pt))

    def bottom_path(self):
        chart = self.M.charts[0]
        seg = (0, chart[0], chart[1])
        wp = (self.M.vertex_location(0), self.M.vertex_location(1))
        return GeodesicPath((seg,), wp)


class H2Quad:
    """Convex hyperbolic quadrilateral with a global-chart oracle."""

    def __init__(self):
        P = H2Patch.point
        self.chart_corners = [P(-0.8, -0.7), P(0.8, -0.7), P(0.8, 0.7), P(-0.8, 0.7)]
        A, B, C, D = self.chart_corners
        d = model_distance
        edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
        lengths = {0: d(A, B), 1: d(B, C), 2: d(C, D), 3: d(D, A), 4: d(A, C)}
        faces = [((0, 1), (1, 1), (4, -1)), ((4, 1), (2, 1), (3, 1))]
        base = AngledComplex(4, tuple(edges), tuple(faces))
        self.M = realize(base, lengths, {0: -1.0, 1: -1.0})
        self.face_tris = [(A, B, C), (A, C, D)]

    def locate(self, face, weights):
        """Location plus the matching global chart point."""
        return (self.M.face_location(face, weights),
                hyp_combination(self.face_tris[face], weights))


@pytest.fixture(scope="session")
def flat_strip():
    """2x1 strip of two unit squares, four triangles."""
    edges = [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5), (0, 4), (1, 5)]
    lengths = {0: 1, 1: 1, 2: 1, 3: 1, 4: 1, 5: 1, 6: 1,
               7: math.sqrt(2), 8: math.sqrt(2)}
    faces = [((0, 1), (5, 1), (7, -1)), ((7, 1), (2, -1), (4, -1)),
             ((1, 1), (6, 1), (8, -1)), ((8, 1), (3, -1), (5, -1))]
    base = AngledComplex(6, tuple(edges), tuple(faces))
    M = realize(base, lengths)
    corners = {0: (0, 0), 1: (1, 0), 2: (2, 0), 3: (0, 1), 4: (1, 1), 5: (2, 1)}
    face_corners = [
        [corners[0], corners[1], corners[4]],
        [corners[0], corners[4], corners[3]],
        [corners[1], corners[2], corners[5]],
        [corners[1], corners[5], corners[4]],
    ]

    def locate(pt):
        x, y = pt
        if x <= 1.0:
            f = 0 if y <= x else 1
        else:
            f = 2 if y <= x - 1.0 else 3
        return M.face_location(f, flat_barycentric(face_corners[f], pt))

    return M, locate


@pytest.fixture(scope="session")
def flat_rect():
    return FlatRect(10.0, 4.0)


@pytest.fixture(scope="session")
def h2_quad():
    return H2Quad()


@pytest.fixture(scope="session")
def beaded5():
    return gen_beaded_strip(5, 3.0, 0.5)


@pytest.fixture(scope="session")
def beaded3():
    return gen_beaded_strip(3, 3.0, 0.5)
