"""Geometric realization of angled complexes and approximate metric queries.

Every face of a :class:`MetricComplex` is realized as a triangle in its model
plane.  Distance queries mesh each face boundary at a resolution h, connect
all boundary nodes of a face pairwise with exact model distances, and run
Dijkstra on the resulting graph; the result is an upper bound on the true
geodesic distance with additive error O(h) per unit length.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from .complexes import AngledComplex
from .constants import ContractionParams, contraction_bound
from .errors import (
    RealizationError,
    UnreachableError,
    UnusableComplexError,
    WrongArityError,
)
from .model import (
    CurvatureClass,
    ModelPoint,
    comparison_angles,
    geodesic_point,
    model_distance,
)

__all__ = [
    "Location",
    "MetricComplex",
    "realize",
    "GeodesicPath",
    "MarkedGeodesic",
    "approx_distance",
    "shortest_path",
    "project_to_path",
    "ProjectionResult",
    "shadow_member",
    "ShadowResult",
    "shadow_lemma_test",
    "contraction_diameter_test",
    "H2Patch",
    "ChartLine",
    "MeshEngine",
]


@dataclass(frozen=True)
class Location:
    """A point of a metric complex with its chart representatives.

    ``anchor`` describes the point combinatorially: ('vertex', v),
    ('edge', e, s) with s the arc length from the edge's first endpoint, or
    ('face', f).  ``reps`` maps each face containing the point to its lifts
    in that face's chart (quotient gluings can lift one point several times
    into the same face).
    """

    anchor: tuple
    reps: Mapping[int, tuple[ModelPoint, ...]]

    def __post_init__(self):
        object.__setattr__(self, "reps", dict(self.reps))

    def faces(self):
        return self.reps.keys()


@dataclass(frozen=True)
class MetricComplex:
    base: AngledComplex
    edge_lengths: Mapping[int, float]
    kappa: Mapping[int, float]
    charts: tuple[tuple[ModelPoint, ModelPoint, ModelPoint], ...]
    marked: "MarkedGeodesic | None" = None

    def __post_init__(self):
        object.__setattr__(self, "edge_lengths", dict(self.edge_lengths))
        object.__setattr__(self, "kappa", dict(self.kappa))
        object.__setattr__(self, "_mesh_cache", {})

    # -- chart helpers -----------------------------------------------------

    def face_curvature_class(self, f: int) -> CurvatureClass:
        return CurvatureClass(self.kappa.get(f, 0.0))

    def side_length(self, f: int, i: int) -> float:
        return self.edge_lengths[self.base.faces[f][i][0]]

    def dart_point(self, f: int, i: int, s: float) -> ModelPoint:
        """Chart point at arc length s from the tail of boundary dart i."""
        v = self.charts[f]
        return geodesic_point(v[i], v[(i + 1) % 3], s)

    def edge_lifts(self, e: int, s: float) -> dict[int, tuple[ModelPoint, ...]]:
        reps: dict[int, list[ModelPoint]] = {}
        length = self.edge_lengths[e]
        for f, face in enumerate(self.base.faces):
            for i, (ei, sign) in enumerate(face):
                if ei != e:
                    continue
                arc = s if sign == 1 else length - s
                reps.setdefault(f, []).append(self.dart_point(f, i, arc))
        return {f: tuple(ps) for f, ps in reps.items()}

    def vertex_location(self, v: int) -> Location:
        reps: dict[int, list[ModelPoint]] = {}
        for f, face in enumerate(self.base.faces):
            for i in range(len(face)):
                if self.base.corner_vertex(f, i) == v:
                    reps.setdefault(f, []).append(self.charts[f][i])
        if not reps:
            raise UnreachableError(f"vertex {v} lies in no face")
        return Location(("vertex", v), {f: tuple(ps) for f, ps in reps.items()})

    def edge_location(self, e: int, s: float) -> Location:
        if not 0.0 <= s <= self.edge_lengths[e] * (1 + 1e-12):
            raise ValueError(f"arc parameter {s} outside edge {e}")
        return Location(("edge", e, s), self.edge_lifts(e, s))

    def face_location(self, f: int, weights: Sequence[float]) -> Location:
        """Point of face f from barycentric-style weights (w0, w1, w2)."""
        w = [max(0.0, float(x)) for x in weights]
        tot = sum(w)
        if tot <= 0:
            raise ValueError("weights must have positive sum")
        w = [x / tot for x in w]
        v = self.charts[f]
        if self.face_curvature_class(f).is_flat:
            x = sum(wi * p.coords[0] for wi, p in zip(w, v))
            y = sum(wi * p.coords[1] for wi, p in zip(w, v))
            pt = ModelPoint(v[0].kappa, (x, y))
        else:
            c = [sum(wi * p.coords[k] for wi, p in zip(w, v)) for k in range(3)]
            pt = ModelPoint.hyperboloid(*c, kappa=v[0].kappa)
        return Location(("face", f), {f: (pt,)})

    def with_marks(self, marked: "MarkedGeodesic") -> "MetricComplex":
        return replace(self, marked=marked)

    def mesh(self, h: float) -> "_MeshGraph":
        cache = self._mesh_cache
        if h not in cache:
            cache[h] = _MeshGraph(self, h)
        return cache[h]


def realize(base: AngledComplex,
            edge_lengths: Mapping[int, float],
            face_kappa: Mapping[int, float] | None = None,
            angle_tol: float = 1e-6,
            marked: "MarkedGeodesic | None" = None) -> MetricComplex:
    """Realize an angled complex with the given edge lengths.

    All faces must be triangles (pre-triangulate polygons).  Corner angles
    are recomputed from each face's model triangle; a stored angle deviating
    by more than ``angle_tol`` is an inconsistent realization.  Missing
    corner angles are filled in from the computed values.
    """
    kappa = dict(base.face_kappa)
    if face_kappa is not None:
        kappa.update({int(f): float(k) for f, k in face_kappa.items()})
    for e in range(len(base.edges)):
        if e not in edge_lengths or not edge_lengths[e] > 0:
            raise RealizationError(f"edge {e} needs a positive length")
    charts = []
    angles = dict(base.corner_angles)
    for f, face in enumerate(base.faces):
        if len(face) != 3:
            raise WrongArityError(
                f"face {f} has {len(face)} sides; triangulate before realizing")
        curv = CurvatureClass(kappa.get(f, 0.0))
        sides = tuple(edge_lengths[e] for e, _ in face)
        tri = comparison_angles(sides, curv)  # raises for invalid sides
        expected = (tri.beta, tri.gamma, tri.alpha)  # angle at chart vertex i
        for i in range(3):
            key = (f, i)
            if key in angles:
                if abs(angles[key] - expected[i]) > angle_tol:
                    raise RealizationError(
                        f"corner {key}: stored angle {angles[key]} vs "
                        f"model angle {expected[i]}")
            else:
                angles[key] = expected[i]
        charts.append(tuple(embed_face(sides, curv)))
    new_base = AngledComplex(base.n_vertices, base.edges, base.faces, angles,
                             {f: kappa.get(f, 0.0) for f in range(len(base.faces))})
    return MetricComplex(new_base, dict(edge_lengths), kappa, tuple(charts), marked)


def embed_face(sides: Sequence[float], curv: CurvatureClass):
    from .model import embed_comparison_triangle

    return embed_comparison_triangle(sides, curv)


# ---------------------------------------------------------------------------
# mesh graph


def _min_pair_distance(lifts_a: Sequence[ModelPoint],
                       lifts_b: Sequence[ModelPoint]) -> float:
    return min(model_distance(pa, pb) for pa in lifts_a for pb in lifts_b)


class _MeshGraph:
    """Subdivision graph of a metric complex at resolution h."""

    def __init__(self, M: MetricComplex, h: float):
        if h <= 0:
            raise ValueError("mesh parameter h must be positive")
        self.M = M
        self.h = h
        base = M.base
        self.edge_div: list[int] = []
        for e in range(len(base.edges)):
            self.edge_div.append(max(1, math.ceil(M.edge_lengths[e] / h - 1e-9)))
        # per-face entries: (node key, chart point)
        self.face_entries: dict[int, list[tuple[tuple, ModelPoint]]] = {}
        for f, face in enumerate(base.faces):
            entries = []
            for i, dart in enumerate(face):
                entries.append((("v", base.corner_vertex(f, i)), M.charts[f][i]))
            for i, (e, sign) in enumerate(face):
                n, length = self.edge_div[e], M.edge_lengths[e]
                for j in range(1, n):
                    s_edge = j * length / n
                    arc = s_edge if sign == 1 else length - s_edge
                    entries.append((("e", e, j), M.dart_point(f, i, arc)))
            self.face_entries[f] = entries
        pair_best: dict[tuple, tuple[float, int]] = {}
        for f, entries in self.face_entries.items():
            for a in range(len(entries)):
                na, pa = entries[a]
                for b in range(a + 1, len(entries)):
                    nb, pb = entries[b]
                    if na == nb:
                        continue
                    w = model_distance(pa, pb)
                    key = (na, nb) if na < nb else (nb, na)
                    old = pair_best.get(key)
                    if old is None or w < old[0]:
                        pair_best[key] = (w, f)
        self.adj: dict[tuple, list[tuple[tuple, float, int]]] = {}
        for (na, nb), (w, f) in pair_best.items():
            self.adj.setdefault(na, []).append((nb, w, f))
            self.adj.setdefault(nb, []).append((na, w, f))
        self.n_nodes = len(self.adj)
        self.n_edges = len(pair_best)

    def node_location(self, node: tuple) -> Location:
        if node[0] == "v":
            return self.M.vertex_location(node[1])
        _, e, j = node
        n, length = self.edge_div[e], self.M.edge_lengths[e]
        return self.M.edge_location(e, j * length / n)

    def _connections(self, loc: Location) -> list[tuple[tuple, float, int]]:
        out = []
        for f, lifts in loc.reps.items():
            for node, p in self.face_entries.get(f, ()):
                w = min(model_distance(p, q) for q in lifts)
                out.append((node, w, f))
        return out

    def dijkstra(self, source: Location, with_pred: bool = False) -> "DistanceField":
        dist: dict[tuple, float] = {}
        pred: dict[tuple, tuple[tuple | None, int]] = {}
        heap = []
        for node, w, f in self._connections(source):
            if w < dist.get(node, math.inf):
                dist[node] = w
                pred[node] = (None, f)
                heapq.heappush(heap, (w, node))
        adj = self.adj
        while heap:
            d, node = heapq.heappop(heap)
            if d > dist.get(node, math.inf):
                continue
            for nbr, w, f in adj.get(node, ()):
                nd = d + w
                if nd < dist.get(nbr, math.inf):
                    dist[nbr] = nd
                    if with_pred:
                        pred[nbr] = (node, f)
                    heapq.heappush(heap, (nd, nbr))
        return DistanceField(self, source, dist, pred if with_pred else None)


@dataclass
class DistanceField:
    mesh: "_MeshGraph"
    source: Location
    dist: dict
    pred: dict | None = None

    def _direct(self, target: Location) -> float:
        best = math.inf
        for f, lifts in target.reps.items():
            src_lifts = self.source.reps.get(f)
            if src_lifts:
                best = min(best, _min_pair_distance(src_lifts, lifts))
        return best

    def eval(self, target: Location) -> float:
        best = self._direct(target)
        dist = self.dist
        for f, lifts in target.reps.items():
            for node, p in self.mesh.face_entries.get(f, ()):
                d = dist.get(node)
                if d is None or d >= best:
                    continue
                w = min(model_distance(p, q) for q in lifts)
                if d + w < best:
                    best = d + w
        return best

    def eval_with_entry(self, target: Location):
        """Best distance plus the connecting (node, face); node None when the
        direct in-face route wins."""
        best, entry = math.inf, None
        for f, lifts in target.reps.items():
            src_lifts = self.source.reps.get(f)
            if src_lifts:
                w = _min_pair_distance(src_lifts, lifts)
                if w < best:
                    best, entry = w, (None, f)
            for node, p in self.mesh.face_entries.get(f, ()):
                d = self.dist.get(node)
                if d is None:
                    continue
                w = min(model_distance(p, q) for q in lifts)
                if d + w < best:
                    best, entry = d + w, (node, f)
        return best, entry


# ---------------------------------------------------------------------------
# paths


@dataclass(frozen=True)
class GeodesicPath:
    """Piecewise model-geodesic path: segment i joins chart points inside
    face ``segments[i][0]``."""

    segments: tuple[tuple[int, ModelPoint, ModelPoint], ...]
    waypoints: tuple[Location, ...] = ()

    def __post_init__(self):
        lengths = tuple(model_distance(a, b) for _, a, b in self.segments)
        object.__setattr__(self, "seg_lengths", lengths)
        object.__setattr__(self, "length", math.fsum(lengths))

    def point_at(self, t: float) -> Location:
        t = min(max(t, 0.0), self.length)
        acc = 0.0
        last = len(self.segments) - 1
        for k, ((f, a, b), seg_len) in enumerate(zip(self.segments, self.seg_lengths)):
            if t <= acc + seg_len or k == last:
                s = min(max(t - acc, 0.0), seg_len)
                return Location(("face", f), {f: (geodesic_point(a, b, s),)})
            acc += seg_len
        raise AssertionError("empty path")


def _field_and_path(M: MetricComplex, p: Location, q: Location, h: float,
                    with_pred: bool = True):
    mesh = M.mesh(h)
    fld = mesh.dijkstra(p, with_pred=with_pred)
    d, entry = fld.eval_with_entry(q)
    if not math.isfinite(d):
        raise UnreachableError("no path between the query points")
    return mesh, fld, d, entry


def approx_distance(M: MetricComplex, p: Location, q: Location, h: float) -> float:
    """Upper-bound approximation of the geodesic distance (additive error
    O(h) per unit length)."""
    return _field_and_path(M, p, q, h, with_pred=False)[2]


def _best_lift_pair(lifts_a, lifts_b):
    best = None
    for pa in lifts_a:
        for pb in lifts_b:
            w = model_distance(pa, pb)
            if best is None or w < best[0]:
                best = (w, pa, pb)
    return best


def shortest_path(M: MetricComplex, p: Location, q: Location, h: float) -> GeodesicPath:
    mesh, fld, d, entry = _field_and_path(M, p, q, h)
    node, f_last = entry
    chain: list[tuple] = []
    while node is not None:
        chain.append(node)
        node, _ = fld.pred[node]
    chain.reverse()  # nodes from source side to target side
    locs = [p] + [mesh.node_location(n) for n in chain] + [q]
    # face of each hop: recompute from predecessor info
    segs = []
    prev_loc = p
    for i, n in enumerate(chain):
        f = fld.pred[n][1]
        _, pa, pb = _best_lift_pair(prev_loc.reps[f], mesh.node_location(n).reps[f])
        segs.append((f, pa, pb))
        prev_loc = mesh.node_location(n)
    _, pa, pb = _best_lift_pair(prev_loc.reps[f_last], q.reps[f_last])
    segs.append((f_last, pa, pb))
    return GeodesicPath(tuple(segs), tuple(locs))


@dataclass(frozen=True)
class MarkedGeodesic:
    """A geodesic path with arc-length marks at negatively curved points."""

    path: GeodesicPath
    marks: tuple[float, ...]
    params: ContractionParams

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple(float(t) for t in self.marks))
        eps, L = self.params.epsilon, self.params.L
        upper = L + (self.params.r_min or L) + eps + 1e-9
        for t0, t1 in zip(self.marks, self.marks[1:]):
            gap = t1 - t0
            if gap < eps - 1e-9 or gap > upper:
                raise ValueError(f"mark gap {gap} outside [{eps}, {upper}]")
        length = getattr(self.path, "length", math.inf)
        if self.marks and math.isfinite(length):
            if self.marks[0] < -1e-9 or self.marks[-1] > length + 1e-9:
                raise ValueError("marks outside the path parameter range")

    def point_at(self, t: float) -> Location:
        return self.path.point_at(t)

    @property
    def length(self) -> float:
        return getattr(self.path, "length", math.inf)


class ProjectionResult(tuple):
    """(t, point, distance) of a nearest-point projection onto a path."""

    __slots__ = ()

    def __new__(cls, t, point, distance):
        return tuple.__new__(cls, (t, point, distance))

    t = property(lambda self: self[0])
    point = property(lambda self: self[1])
    distance = property(lambda self: self[2])


def _path_of(gamma) -> GeodesicPath:
    return gamma.path if isinstance(gamma, MarkedGeodesic) else gamma


def _project_field(field: DistanceField, gamma, h: float) -> ProjectionResult:
    path = _path_of(gamma)
    length = path.length
    step = min(h, length / 8) if length > 0 else 1.0
    n = max(2, math.ceil(length / step))
    ts = [length * i / n for i in range(n + 1)]
    vals = [field.eval(path.point_at(t)) for t in ts]
    i = min(range(len(ts)), key=lambda k: (vals[k], k))
    lo = ts[max(0, i - 1)]
    hi = ts[min(len(ts) - 1, i + 1)]
    f = lambda t: field.eval(path.point_at(t))
    for _ in range(48):
        if hi - lo < 1e-12 * max(1.0, length):
            break
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if f(m1) <= f(m2):
            hi = m2
        else:
            lo = m1
    t_best = 0.5 * (lo + hi)
    d_best = f(t_best)
    if vals[i] < d_best:
        t_best, d_best = ts[i], vals[i]
    return ProjectionResult(t_best, path.point_at(t_best), d_best)


def project_to_path(M: MetricComplex, x: Location, gamma, h: float) -> ProjectionResult:
    """Nearest-point projection of x onto a path: the arc parameter minimizing
    the approximate distance, located on a mesh-resolution sample of the
    profile and refined by ternary search."""
    field = M.mesh(h).dijkstra(x)
    return _project_field(field, gamma, h)


@dataclass(frozen=True)
class ShadowResult:
    member: bool
    min_distance: float
    radius: float
    slack: float

    def __bool__(self) -> bool:
        return self.member


def shadow_member(M: MetricComplex, o: Location, y: Location, z: Location,
                  radius: float, h: float) -> ShadowResult:
    """Whether y lies in the shadow of the ball B(z, radius) seen from o:
    the approximate geodesic [o, y] must pass within radius + 2h of z (the
    2h term is the reported mesh slack)."""
    path = shortest_path(M, o, y, h)
    field = M.mesh(h).dijkstra(z)
    proj = _project_field(field, path, h)
    slack = 2.0 * h
    return ShadowResult(proj.distance <= radius + slack, proj.distance,
                        radius, slack)


# ---------------------------------------------------------------------------
# randomized testers


def _random_location(M: MetricComplex, rng: np.random.Generator) -> Location:
    f = int(rng.integers(0, len(M.base.faces)))
    w = rng.dirichlet((1.0, 1.0, 1.0))
    return M.face_location(f, w)


@dataclass(frozen=True)
class ShadowTrial:
    trial: int
    t_o: float
    t_z: float
    t_y: float
    x_anchor: tuple
    d_xy: float
    min_distance: float
    threshold: float
    ok: bool


@dataclass(frozen=True)
class ShadowLemmaReport:
    k_candidate: float
    radius: float
    epsilon: float
    h: float
    trials: tuple[ShadowTrial, ...]
    counterexamples: tuple[int, ...]

    @property
    def n_counterexamples(self) -> int:
        return len(self.counterexamples)


def shadow_lemma_test(M: MetricComplex, k_candidate: float, radius: float,
                      epsilon: float, trials: int, seed: int,
                      h: float = 0.1) -> ShadowLemmaReport:
    """Empirical falsifier for a candidate shadow constant k.

    Samples configurations (o, z, y, x) with z a marked negatively curved
    point on [o, y] along the marked geodesic, d(z, y) >= k_candidate and
    d(x, y) <= radius, then reports every trial where the approximate
    segment [o, x] misses B(z, epsilon + 2h).
    """
    mg = M.marked
    if mg is None or not mg.marks:
        raise UnusableComplexError("complex has no marked CAT(-1) points")
    gamma = mg.path
    total = gamma.length
    feasible = [t for t in mg.marks
                if t > 1e-6 and t + k_candidate <= total - 1e-6]
    if not feasible:
        raise UnusableComplexError(
            f"no marked point admits d(z, y) >= {k_candidate} on this complex")
    mesh = M.mesh(h)
    z_fields = {}
    records = []
    counterexamples = []
    threshold = epsilon + 2.0 * h
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        t_z = float(feasible[int(rng.integers(0, len(feasible)))])
        t_y = float(rng.uniform(t_z + k_candidate, min(total, t_z + k_candidate + 2.0)))
        t_o = float(rng.uniform(0.0, 0.9 * t_z))
        y_loc = gamma.point_at(t_y)
        y_field = mesh.dijkstra(y_loc)
        x_loc, d_xy = y_loc, 0.0
        for _ in range(40):
            cand = _random_location(M, rng)
            d = y_field.eval(cand)
            if d <= radius:
                x_loc, d_xy = cand, d
                break
        if t_z not in z_fields:
            z_fields[t_z] = mesh.dijkstra(gamma.point_at(t_z))
        path_ox = shortest_path(M, gamma.point_at(t_o), x_loc, h)
        proj = _project_field(z_fields[t_z], path_ox, h)
        ok = proj.distance <= threshold
        records.append(ShadowTrial(trial, t_o, t_z, t_y, x_loc.anchor, d_xy,
                                   proj.distance, threshold, ok))
        if not ok:
            counterexamples.append(trial)
    return ShadowLemmaReport(k_candidate, radius, epsilon, h, tuple(records),
                             tuple(counterexamples))


@dataclass(frozen=True)
class ContractionTrial:
    trial: int
    x_anchor: tuple
    d_x_gamma: float
    d_xy: float
    t_x: float
    t_y: float
    diameter: float


@dataclass(frozen=True)
class ContractionReport:
    trials: tuple[ContractionTrial, ...]
    max_diameter: float
    bound: float
    params: ContractionParams
    h: float

    @property
    def passed(self) -> bool:
        return self.max_diameter <= self.bound

    def profile(self) -> list[tuple[float, float]]:
        """(distance to the geodesic, projection diameter) per trial."""
        return [(t.d_x_gamma, t.diameter) for t in self.trials]


def contraction_diameter_test(M: MetricComplex, gamma: MarkedGeodesic,
                              trials: int, seed: int, h: float) -> ContractionReport:
    """Sample balls disjoint from the marked geodesic and record the spread
    of their projections, compared against the closed-form bound.

    Each trial picks x off the geodesic and y inside the ball around x of
    radius d(x, gamma)*(1 - 1e-3) (so the ball misses gamma), projects both
    and records the arc-length gap of the projections.
    """
    mesh = M.mesh(h)
    bound = contraction_bound(gamma.params)
    records = []
    worst = 0.0
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        x_loc = _random_location(M, rng)
        x_field = mesh.dijkstra(x_loc)
        proj_x = _project_field(x_field, gamma, h)
        if proj_x.distance <= 1e-6:
            records.append(ContractionTrial(trial, x_loc.anchor, proj_x.distance,
                                            0.0, proj_x.t, proj_x.t, 0.0))
            continue
        r = proj_x.distance * (1.0 - 1e-3)
        y_loc, d_xy = x_loc, 0.0
        for _ in range(40):
            cand = _random_location(M, rng)
            d = x_field.eval(cand)
            if d < r:
                y_loc, d_xy = cand, d
                break
        if d_xy == 0.0:
            t_y = proj_x.t
        else:
            proj_y = _project_field(mesh.dijkstra(y_loc), gamma, h)
            t_y = proj_y.t
        diam = abs(proj_x.t - t_y)
        worst = max(worst, diam)
        records.append(ContractionTrial(trial, x_loc.anchor, proj_x.distance,
                                        d_xy, proj_x.t, t_y, diam))
    return ContractionReport(tuple(records), worst, bound, gamma.params, h)


# ---------------------------------------------------------------------------
# exact hyperbolic chart engine


@dataclass(frozen=True)
class ChartLine:
    """The axis geodesic t -> (cosh t, sinh t, 0) of the unit hyperbolic
    plane, parametrized by arc length over all of R."""

    length: float = math.inf

    def point_at(self, t: float) -> ModelPoint:
        return ModelPoint(CurvatureClass(-1.0), (math.cosh(t), math.sinh(t), 0.0))

    def project(self, p: ModelPoint) -> ProjectionResult:
        x0, x1, x2 = p.coords
        t = math.atanh(x1 / x0)
        return ProjectionResult(t, self.point_at(t), math.asinh(abs(x2)))


@dataclass(frozen=True)
class _ChartSegment:
    a: ModelPoint
    b: ModelPoint

    def __post_init__(self):
        object.__setattr__(self, "length", model_distance(self.a, self.b))

    def point_at(self, s: float) -> ModelPoint:
        return geodesic_point(self.a, self.b, min(max(s, 0.0), self.length))


class H2Patch:
    """Exact distance/geodesic engine on the unit hyperbolic plane.

    Serves as the reference backend for projection and certificate tests:
    every query is answered in closed form on the hyperboloid.
    """

    distance_error = 0.0

    @staticmethod
    def point(t: float, height: float) -> ModelPoint:
        """Point at signed distance ``height`` from the axis, above axis
        parameter t."""
        ch, sh = math.cosh(height), math.sinh(height)
        return ModelPoint(CurvatureClass(-1.0),
                          (ch * math.cosh(t), ch * math.sinh(t), sh))

    @staticmethod
    def distance(p: ModelPoint, q: ModelPoint) -> float:
        return model_distance(p, q)

    @staticmethod
    def geodesic(p: ModelPoint, q: ModelPoint) -> _ChartSegment:
        return _ChartSegment(p, q)

    @staticmethod
    def project(x: ModelPoint, gamma) -> ProjectionResult:
        path = _path_of(gamma)
        if isinstance(path, ChartLine):
            return path.project(x)
        raise TypeError("H2Patch projects onto ChartLine geodesics")

    @staticmethod
    def segment_distance_to(p: ModelPoint, seg: _ChartSegment,
                            samples: int = 256) -> float:
        """Distance from p to a chart segment by dense sampling plus ternary
        refinement (the profile is convex in arc length)."""
        lo, hi = 0.0, seg.length
        f = lambda s: model_distance(p, seg.point_at(s))
        for _ in range(96):
            m1 = lo + (hi - lo) / 3
            m2 = hi - (hi - lo) / 3
            if f(m1) <= f(m2):
                hi = m2
            else:
                lo = m1
        return f(0.5 * (lo + hi))
