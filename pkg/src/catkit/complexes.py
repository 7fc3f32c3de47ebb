"""Angled polygonal complexes: corner angles, curvature, Gauss-Bonnet, links.

A complex stores vertices by count, edges as unordered vertex pairs (loops
and multi-edges allowed) and faces as closed cycles of directed edges.  A
*corner* is a position in a face boundary: corner (f, i) sits at the tail
vertex of the i-th directed boundary edge, between directed edges i-1 and i.
Quotient identifications are allowed throughout, so a face may visit the
same vertex or edge several times.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    IncompleteAnglesError,
    MalformedComplexError,
    WrongArityError,
)

__all__ = [
    "AngledComplex",
    "LinkGraph",
    "CurvatureReport",
    "vertex_curvature",
    "face_curvature",
    "triangle_deficiency",
    "gauss_bonnet",
    "link_graph",
    "link_shortest_cycle",
    "vertex_link_girths",
    "is_locally_cat0",
    "cat_minus_one_admissible",
    "subdivide_edge",
]

TWO_PI = 2.0 * math.pi

# a face boundary is a tuple of (edge index, orientation) with orientation +-1
Dart = tuple[int, int]


@dataclass(frozen=True)
class AngledComplex:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[Dart, ...], ...]
    corner_angles: Mapping[tuple[int, int], float] = field(default_factory=dict)
    face_kappa: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        object.__setattr__(self, "faces",
                           tuple(tuple((int(e), int(s)) for e, s in f) for f in self.faces))
        object.__setattr__(self, "corner_angles", dict(self.corner_angles))
        object.__setattr__(self, "face_kappa",
                           {int(f): float(k) for f, k in dict(self.face_kappa).items()})
        self._validate()

    def _validate(self):
        for u, v in self.edges:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise MalformedComplexError(f"edge ({u}, {v}) out of vertex range")
        for fi, face in enumerate(self.faces):
            if len(face) < 1:
                raise MalformedComplexError(f"face {fi} has empty boundary")
            for e, s in face:
                if not 0 <= e < len(self.edges):
                    raise MalformedComplexError(f"face {fi} uses unknown edge {e}")
                if s not in (1, -1):
                    raise MalformedComplexError(f"face {fi} has orientation {s}")
            for i in range(len(face)):
                if self.dart_head(face[i]) != self.dart_tail(face[(i + 1) % len(face)]):
                    raise MalformedComplexError(f"face {fi} boundary does not close at {i}")
        for (f, i), angle in self.corner_angles.items():
            if not (0 <= f < len(self.faces) and 0 <= i < len(self.faces[f])):
                raise MalformedComplexError(f"corner key ({f}, {i}) out of range")
            if not 0.0 < angle < TWO_PI:
                raise MalformedComplexError(
                    f"corner ({f}, {i}) angle {angle} outside (0, 2*pi)")
        for f in self.face_kappa:
            if not 0 <= f < len(self.faces):
                raise MalformedComplexError(f"face_kappa key {f} out of range")

    # -- incidence helpers -------------------------------------------------

    def dart_tail(self, dart: Dart) -> int:
        e, s = dart
        return self.edges[e][0] if s == 1 else self.edges[e][1]

    def dart_head(self, dart: Dart) -> int:
        e, s = dart
        return self.edges[e][1] if s == 1 else self.edges[e][0]

    def dart_tail_end(self, dart: Dart) -> tuple[int, int]:
        """Edge end (edge, 0|1) at the tail of a directed edge."""
        e, s = dart
        return (e, 0) if s == 1 else (e, 1)

    def dart_head_end(self, dart: Dart) -> tuple[int, int]:
        e, s = dart
        return (e, 1) if s == 1 else (e, 0)

    def corner_vertex(self, f: int, i: int) -> int:
        return self.dart_tail(self.faces[f][i])

    def corners(self) -> Iterable[tuple[int, int]]:
        for f, face in enumerate(self.faces):
            for i in range(len(face)):
                yield (f, i)

    def corners_at(self, v: int) -> list[tuple[int, int]]:
        return [(f, i) for (f, i) in self.corners() if self.corner_vertex(f, i) == v]

    def corner_angle(self, f: int, i: int) -> float:
        try:
            return self.corner_angles[(f, i)]
        except KeyError:
            raise IncompleteAnglesError(
                f"corner ({f}, {i}) at vertex {self.corner_vertex(f, i)} has no angle") from None

    def kappa_of_face(self, f: int) -> float:
        return self.face_kappa.get(f, 0.0)

    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edges) + len(self.faces)


@dataclass(frozen=True)
class LinkGraph:
    """Metric graph of a vertex link: nodes are edge ends incident to the
    vertex, arcs are corners weighted by their angle."""

    nodes: tuple[tuple[int, int], ...]
    arcs: tuple[tuple[tuple[int, int], tuple[int, int], float], ...]

    def euler_characteristic(self) -> int:
        return len(self.nodes) - len(self.arcs)

    def total_angle(self) -> float:
        return sum(w for _, _, w in self.arcs)


def link_graph(x: AngledComplex, v: int) -> LinkGraph:
    """Link of vertex v: one node per edge end at v (a loop contributes two),
    one arc per corner based at v."""
    if not 0 <= v < x.n_vertices:
        raise MalformedComplexError(f"vertex {v} out of range")
    nodes = []
    for e, (a, b) in enumerate(x.edges):
        if a == v:
            nodes.append((e, 0))
        if b == v:
            nodes.append((e, 1))
    arcs = []
    for f, i in x.corners():
        if x.corner_vertex(f, i) != v:
            continue
        face = x.faces[f]
        incoming = x.dart_head_end(face[i - 1])
        outgoing = x.dart_tail_end(face[i])
        arcs.append((incoming, outgoing, x.corner_angle(f, i)))
    return LinkGraph(tuple(nodes), tuple(arcs))


def link_shortest_cycle(link: LinkGraph) -> float:
    """Length of the shortest injective cycle of the weighted link graph,
    or infinity when the link is acyclic.

    Computed by deleting each arc in turn and running Dijkstra between its
    endpoints; a self-loop arc is itself a cycle.
    """
    adj: dict[tuple[int, int], list[tuple[tuple[int, int], float, int]]] = \
        {n: [] for n in link.nodes}
    for k, (u, v, w) in enumerate(link.arcs):
        adj[u].append((v, w, k))
        adj[v].append((u, w, k))
    best = math.inf
    for k, (u, v, w) in enumerate(link.arcs):
        if u == v:
            best = min(best, w)
            continue
        # Dijkstra from u to v avoiding arc k
        dist = {u: 0.0}
        heap = [(0.0, id(u), u)]
        while heap:
            d, _, node = heapq.heappop(heap)
            if d > dist.get(node, math.inf):
                continue
            if node == v:
                break
            for nbr, wt, arc_id in adj[node]:
                if arc_id == k:
                    continue
                nd = d + wt
                if nd < dist.get(nbr, math.inf) and nd < best:
                    dist[nbr] = nd
                    heapq.heappush(heap, (nd, id(nbr), nbr))
        if v in dist:
            best = min(best, w + dist[v])
    return best


def vertex_curvature(x: AngledComplex, v: int) -> float:
    """kappa(v) = 2*pi - pi*chi(link(v)) - sum of corner angles at v."""
    link = link_graph(x, v)
    total = sum(x.corner_angle(f, i) for f, i in x.corners_at(v))
    return TWO_PI - math.pi * link.euler_characteristic() - total


def face_curvature(x: AngledComplex, f: int) -> float:
    """kappa(R) = sum of corner angles - pi*|boundary| + 2*pi."""
    if not 0 <= f < len(x.faces):
        raise MalformedComplexError(f"face {f} out of range")
    m = len(x.faces[f])
    total = sum(x.corner_angle(f, i) for i in range(m))
    return total - math.pi * m + TWO_PI


def triangle_deficiency(x: AngledComplex, f: int) -> float:
    """pi minus the angle sum of a triangular face; equals -face_curvature."""
    if len(x.faces[f]) != 3:
        raise WrongArityError(f"face {f} has {len(x.faces[f])} sides, need 3")
    return math.pi - sum(x.corner_angle(f, i) for i in range(3))


@dataclass(frozen=True)
class CurvatureReport:
    vertex_curvatures: tuple[float, ...]
    face_curvatures: tuple[float, ...]
    total: float
    euler_characteristic: int
    expected_total: float
    residual: float


def gauss_bonnet(x: AngledComplex) -> CurvatureReport:
    """Combinatorial Gauss-Bonnet accounting:
    sum of vertex curvatures + sum of face curvatures = 2*pi*chi."""
    vk = tuple(vertex_curvature(x, v) for v in range(x.n_vertices))
    fk = tuple(face_curvature(x, f) for f in range(len(x.faces)))
    total = math.fsum(vk) + math.fsum(fk)
    chi = x.euler_characteristic()
    expected = TWO_PI * chi
    return CurvatureReport(vk, fk, total, chi, expected, total - expected)


def vertex_link_girths(x: AngledComplex) -> list[float]:
    return [link_shortest_cycle(link_graph(x, v)) for v in range(x.n_vertices)]


def is_locally_cat0(x: AngledComplex, v: int, tol: float = 1e-9) -> bool:
    """Link girth condition at v: every injective link cycle has length >= 2*pi."""
    return link_shortest_cycle(link_graph(x, v)) >= TWO_PI - tol


def cat_minus_one_admissible(x: AngledComplex, v: int, tol: float = 1e-9) -> bool:
    """Sufficient combinatorial condition for a CAT(-1) neighborhood at v:
    link girth strictly above 2*pi and every incident face negatively curved."""
    girth = link_shortest_cycle(link_graph(x, v))
    if not girth > TWO_PI + tol:
        return False
    incident = {f for (f, i) in x.corners_at(v)}
    return bool(incident) and all(x.kappa_of_face(f) < 0 for f in incident)


def subdivide_edge(x: AngledComplex, e: int) -> AngledComplex:
    """Insert a degree-2 vertex in the middle of edge e.

    The two new corners per face traversal get straight angles pi, which
    keeps every Gauss-Bonnet quantity unchanged.  Used by property tests;
    edge lengths are not tracked here.
    """
    if not 0 <= e < len(x.edges):
        raise MalformedComplexError(f"edge {e} out of range")
    u, w = x.edges[e]
    mid = x.n_vertices
    e1, e2 = e, len(x.edges)  # e becomes (u, mid), new edge (mid, w)
    edges = list(x.edges)
    edges[e] = (u, mid)
    edges.append((mid, w))
    faces = []
    angles: dict[tuple[int, int], float] = {}
    for f, face in enumerate(x.faces):
        new_face: list[Dart] = []
        pos_map: list[int] = []  # old position -> new position of its corner
        for ei, s in face:
            pos_map.append(len(new_face))
            if ei != e:
                new_face.append((ei, s))
            elif s == 1:
                new_face.extend([(e1, 1), (e2, 1)])
            else:
                new_face.extend([(e2, -1), (e1, -1)])
        for i in range(len(face)):
            key = (f, i)
            if key in x.corner_angles:
                angles[(f, pos_map[i])] = x.corner_angles[key]
        # straight corners at the new vertex sit after the first half edge
        for i, (ei, s) in enumerate(face):
            if ei == e:
                angles[(f, pos_map[i] + 1)] = math.pi
        faces.append(tuple(new_face))
    return AngledComplex(x.n_vertices + 1, tuple(edges), tuple(faces),
                         angles, dict(x.face_kappa))
