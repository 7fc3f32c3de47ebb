"""Constructors for the example complexes used throughout the package.

All generators are deterministic and return realized metric complexes whose
corner angles are computed from the model triangles, so every output passes
the realization consistency checks exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .complexes import AngledComplex, vertex_link_girths
from .constants import ContractionParams
from .errors import ConstructionError, DomainError
from .metric import GeodesicPath, MarkedGeodesic, MetricComplex, realize
from .model import comparison_angles

__all__ = [
    "SurfaceGluingSpec",
    "gen_standard",
    "regular_polygon_side",
    "gen_surface",
    "gen_figure3",
    "gen_beaded_strip",
    "FIGURE3_PRESENTATION",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SurfaceGluingSpec:
    """Description of a gluing of compact surfaces along canonical loops.

    ``surfaces`` maps a name to a genus (0 means the square torus model is
    meant to be genus 1; we store the genus as given).  ``gluings`` lists
    (surface_a, loop_a, surface_b, loop_b) identifications; every canonical
    loop has the common length ``loop_length``.
    """

    surfaces: tuple[tuple[str, int], ...]
    gluings: tuple[tuple[str, int, str, int], ...]
    loop_length: float

    def gluing_graph(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {name: set() for name, _ in self.surfaces}
        for sa, _, sb, _ in self.gluings:
            adj[sa].add(sb)
            adj[sb].add(sa)
        return adj

    def is_triangle_free(self) -> bool:
        adj = self.gluing_graph()
        for a, nbrs in adj.items():
            for b in nbrs:
                if a < b and adj[a] & adj[b]:
                    return False
        return True


class _Builder:
    """Incremental cell accumulator; corner angles are filled from the model
    triangle of each face when it is added."""

    def __init__(self):
        self.n_vertices = 0
        self.edges: list[tuple[int, int]] = []
        self.lengths: list[float] = []
        self.faces: list[tuple[tuple[int, int], ...]] = []
        self.kappa: dict[int, float] = {}
        self.angles: dict[tuple[int, int], float] = {}

    def vertex(self) -> int:
        self.n_vertices += 1
        return self.n_vertices - 1

    def edge(self, u: int, v: int, length: float) -> int:
        self.edges.append((u, v))
        self.lengths.append(length)
        return len(self.edges) - 1

    def face(self, darts: list[tuple[int, int]], kappa: float) -> int:
        f = len(self.faces)
        self.faces.append(tuple(darts))
        self.kappa[f] = kappa
        sides = tuple(self.lengths[e] for e, _ in darts)
        tri = comparison_angles(sides, kappa)
        for i, angle in enumerate((tri.beta, tri.gamma, tri.alpha)):
            self.angles[(f, i)] = angle
        return f

    def build(self) -> MetricComplex:
        base = AngledComplex(self.n_vertices, tuple(self.edges), tuple(self.faces),
                             self.angles, self.kappa)
        return realize(base, dict(enumerate(self.lengths)), self.kappa)


def gen_standard(kind: str) -> MetricComplex:
    """Euclidean fixtures: 'disc_triangle' (chi=1), 'sphere_tetrahedron'
    (chi=2) or 'flat_torus' (chi=0, one square fanned into four triangles)."""
    b = _Builder()
    if kind == "disc_triangle":
        v = [b.vertex() for _ in range(3)]
        e01 = b.edge(v[0], v[1], 1.0)
        e12 = b.edge(v[1], v[2], 1.0)
        e20 = b.edge(v[2], v[0], 1.0)
        b.face([(e01, 1), (e12, 1), (e20, 1)], 0.0)
    elif kind == "sphere_tetrahedron":
        v = [b.vertex() for _ in range(4)]
        idx = {}
        for i in range(4):
            for j in range(i + 1, 4):
                idx[(i, j)] = b.edge(v[i], v[j], 1.0)

        def dart(i, j):
            return (idx[(i, j)], 1) if i < j else (idx[(j, i)], -1)

        for tri in ((1, 2, 3), (0, 2, 1), (0, 3, 2), (0, 1, 3)):
            b.face([dart(tri[0], tri[1]), dart(tri[1], tri[2]), dart(tri[2], tri[0])], 0.0)
    elif kind == "flat_torus":
        v = b.vertex()
        c = b.vertex()
        ea = b.edge(v, v, 1.0)
        eb = b.edge(v, v, 1.0)
        sp = [b.edge(c, v, math.sqrt(0.5)) for _ in range(4)]
        b.face([(sp[0], 1), (ea, 1), (sp[1], -1)], 0.0)
        b.face([(sp[1], 1), (eb, 1), (sp[2], -1)], 0.0)
        b.face([(sp[2], 1), (ea, -1), (sp[3], -1)], 0.0)
        b.face([(sp[3], 1), (eb, -1), (sp[0], -1)], 0.0)
    else:
        raise ValueError(f"unknown standard complex {kind!r}")
    return b.build()


def regular_polygon_side(n: int, vertex_angle: float) -> float:
    """Side length of the regular hyperbolic n-gon with the given vertex
    angle, in the unit hyperbolic plane:
    cosh(s/2) = cos(pi/n) / sin(vertex_angle/2)."""
    if n != int(n) or n < 3:
        raise DomainError(f"need an integer n >= 3, got {n}")
    if not 0 < vertex_angle < math.pi:
        raise DomainError(f"vertex angle must lie in (0, pi), got {vertex_angle}")
    if n * vertex_angle >= (n - 2) * math.pi:
        raise DomainError(
            f"regular {n}-gon with angle {vertex_angle} is not hyperbolic")
    ratio = math.cos(math.pi / n) / math.sin(vertex_angle / 2.0)
    return 2.0 * math.acosh(ratio)


def _surface_cells(g: int, b: _Builder) -> dict:
    """Append the center-fan triangulated right-angled 4g-gon surface to the
    builder; returns ids of the named cells."""
    n = 4 * g
    s = regular_polygon_side(n, math.pi / 2.0)
    q = s / 2.0
    rho = math.atanh(math.sinh(q))       # apothem (right-angled case)
    big_r = math.acosh(math.cosh(rho) * math.cosh(q))  # circumradius
    center = b.vertex()
    v = b.vertex()
    mids = [b.vertex() for _ in range(2 * g)]
    spokes = [b.edge(center, v, big_r) for _ in range(n)]
    # side-occurrence -> canonical loop and direction (genus-g standard word)
    loop_of, inverted = [], []
    for j in range(n):
        k, r = divmod(j, 4)
        loop_of.append(2 * k + (r % 2))
        inverted.append(r >= 2)
    apothems = [b.edge(center, mids[loop_of[j]], rho) for j in range(n)]
    half_a = [b.edge(v, mids[p], q) for p in range(2 * g)]
    half_b = [b.edge(mids[p], v, q) for p in range(2 * g)]
    for j in range(n):
        p = loop_of[j]
        if not inverted[j]:
            first, second = (half_a[p], 1), (half_b[p], 1)
        else:
            first, second = (half_b[p], -1), (half_a[p], -1)
        b.face([(spokes[j], 1), first, (apothems[j], -1)], -1.0)
        b.face([(apothems[j], 1), second, (spokes[(j + 1) % n], -1)], -1.0)
    return {"center": center, "v": v, "mids": mids, "half_a": half_a,
            "half_b": half_b, "side": s}


def gen_surface(g: int) -> MetricComplex:
    """Genus-g surface (g >= 2) from the regular right-angled 4g-gon,
    center-fanned into 8g hyperbolic right triangles."""
    if g < 2:
        raise DomainError(f"genus must be >= 2, got {g}")
    b = _Builder()
    _surface_cells(g, b)
    return b.build()


FIGURE3_PRESENTATION = """\
generators: a1 a2 a3 a4 b1 b2 b3 b4
relators:
[a1,a2][a3,a4]
[b1,b2]
[b2,b3]
[b3,b4]
[a1,b1]
[a2,b2]
[a3,b3]
[a4,b4]
"""


def gen_figure3() -> tuple[MetricComplex, str]:
    """Genus-2 surface with four tori glued along its canonical loops and
    three more tori chaining consecutive commuting loops.

    Every canonical loop is scaled to the right-angled octagon side; tori are
    square, subdivided so that every gluing curve is an edge path.  Returns
    the complex together with the presentation of its fundamental group.
    """
    b = _Builder()
    cells = _surface_cells(2, b)
    s = cells["side"]
    v = cells["v"]
    diag = s * math.sqrt(0.5)
    b_loops = []
    for i in range(4):
        mu = cells["mids"][i]
        ha, hb = cells["half_a"][i], cells["half_b"][i]
        c = b.vertex()
        eb = b.edge(v, v, s)
        b_loops.append(eb)
        ec = [b.edge(c, v, diag) for _ in range(4)]   # to the square corners
        em = [b.edge(c, mu, s / 2.0) for _ in range(2)]  # to bottom/top midpoint
        b.face([(ec[0], 1), (ha, 1), (em[0], -1)], 0.0)
        b.face([(em[0], 1), (hb, 1), (ec[1], -1)], 0.0)
        b.face([(ec[1], 1), (eb, 1), (ec[2], -1)], 0.0)
        b.face([(ec[2], 1), (hb, -1), (em[1], -1)], 0.0)
        b.face([(em[1], 1), (ha, -1), (ec[3], -1)], 0.0)
        b.face([(ec[3], 1), (eb, -1), (ec[0], -1)], 0.0)
    for i in range(3):
        c = b.vertex()
        sp = [b.edge(c, v, diag) for _ in range(4)]
        b.face([(sp[0], 1), (b_loops[i], 1), (sp[1], -1)], 0.0)
        b.face([(sp[1], 1), (b_loops[i + 1], 1), (sp[2], -1)], 0.0)
        b.face([(sp[2], 1), (b_loops[i], -1), (sp[3], -1)], 0.0)
        b.face([(sp[3], 1), (b_loops[i + 1], -1), (sp[0], -1)], 0.0)
    return b.build(), FIGURE3_PRESENTATION


def _bead_geometry(epsilon: float, L: float):
    """Pick the fan count K and spoke length rho for a bead whose 2*epsilon
    ball around the center clears every non-hyperbolic face by the margin."""
    margin = 0.05
    need = 2.0 * epsilon + margin
    for k in range(4, 41):
        cos_half = math.cos(math.pi / (2.0 * k))
        t = math.tanh(need) / cos_half
        if t >= 1.0:
            continue
        rho = max(math.atanh(t), need)
        if 2.0 * rho <= L - 0.1:
            return k, rho
    raise ConstructionError(
        f"no hyperbolic bead with ball radius {2 * epsilon} fits in a gap of {L}")


def gen_beaded_strip(n_beads: int, L: float, epsilon: float
                     ) -> tuple[MetricComplex, MarkedGeodesic]:
    """Flat strip of half-width 2*epsilon whose central line is a geodesic
    passing through ``n_beads`` hyperbolic fans spaced L apart.

    Every face within distance 2*epsilon of a bead center is hyperbolic,
    everything else is Euclidean; all interior vertex links have girth
    >= 2*pi (checked).  Returns the complex and the marked geodesic.
    """
    if n_beads < 1:
        raise DomainError("need at least one bead")
    if not L > 2.0 * epsilon + 0.1:
        raise DomainError(f"need L > 2*epsilon + 0.1, got L={L}, epsilon={epsilon}")
    k_fan, rho = _bead_geometry(epsilon, L)
    theta = math.pi / k_fan
    w_half = 2.0 * epsilon
    # fan triangle (legs rho, apex theta) and its base angle
    base = math.acosh(math.cosh(rho) ** 2 - math.sinh(rho) ** 2 * math.cos(theta))
    tri = comparison_angles((base, rho, rho), -1.0)
    beta = tri.beta
    c_u = math.pi / 2.0 - beta + 0.05
    if not 0.0 < c_u < math.pi:
        raise ConstructionError(f"transition corner {c_u} out of range")
    tau = math.sqrt(w_half ** 2 + base ** 2 - 2.0 * w_half * base * math.cos(c_u))

    b = _Builder()
    axis_faces: list[int] = []   # up-face of each axis edge, in order
    axis_edges: list[int] = []
    marks: list[float] = []
    arc = 0.0

    a0 = b.vertex()
    top = b.vertex()
    bot = b.vertex()
    e_up = b.edge(a0, top, w_half)
    e_dn = b.edge(a0, bot, w_half)
    cur = (a0, top, bot, e_up, e_dn)

    def flat_block(cur, width):
        ax, tp, bt, eu, ed = cur
        na, nt, nb = b.vertex(), b.vertex(), b.vertex()
        diag = math.hypot(width, w_half)
        e_ax = b.edge(ax, na, width)
        e_tp = b.edge(tp, nt, width)
        e_bt = b.edge(bt, nb, width)
        neu = b.edge(na, nt, w_half)
        ned = b.edge(na, nb, w_half)
        dgu = b.edge(ax, nt, diag)
        dgd = b.edge(ax, nb, diag)
        f_up = b.face([(e_ax, 1), (neu, 1), (dgu, -1)], 0.0)
        b.face([(dgu, 1), (e_tp, -1), (eu, -1)], 0.0)
        b.face([(e_ax, 1), (ned, 1), (dgd, -1)], 0.0)
        b.face([(dgd, 1), (e_bt, -1), (ed, -1)], 0.0)
        axis_edges.append(e_ax)
        axis_faces.append(f_up)
        return (na, nt, nb, neu, ned), width

    def flat_run(cur, total):
        blocks = max(1, math.ceil(total / 1.0))
        width = total / blocks
        advanced = 0.0
        for _ in range(blocks):
            cur, dw = flat_block(cur, width)
            advanced += dw
        return cur, advanced

    def bead_block(cur):
        ax, tp, bt, eu, ed = cur
        m = b.vertex()
        w_vert = b.vertex()
        nt, nb = b.vertex(), b.vertex()
        rim_u = [b.vertex() for _ in range(k_fan - 1)]
        rim_d = [b.vertex() for _ in range(k_fan - 1)]
        ax_l = b.edge(ax, m, rho)
        ax_r = b.edge(m, w_vert, rho)
        neu = b.edge(w_vert, nt, w_half)
        ned = b.edge(w_vert, nb, w_half)

        def half(rims, e_vert_l, e_vert_r, t_l, t_r):
            sp = [b.edge(m, r, rho) for r in rims]
            rim_edges = [b.edge(ax, rims[0], base)]
            rim_edges += [b.edge(rims[i], rims[i + 1], base) for i in range(len(rims) - 1)]
            rim_edges.append(b.edge(rims[-1], w_vert, base))
            tr_l = b.edge(t_l, rims[0], tau)
            tr_r = b.edge(t_r, rims[-1], tau)
            f_first = b.face([(ax_l, -1), (rim_edges[0], 1), (sp[0], -1)], -1.0)
            for i in range(len(rims) - 1):
                b.face([(sp[i], 1), (rim_edges[i + 1], 1), (sp[i + 1], -1)], -1.0)
            b.face([(sp[-1], 1), (rim_edges[-1], 1), (ax_r, -1)], -1.0)
            b.face([(e_vert_l, 1), (tr_l, 1), (rim_edges[0], -1)], 0.0)
            b.face([(e_vert_r, 1), (tr_r, 1), (rim_edges[-1], 1)], 0.0)
            return f_first

        f_up = half(rim_u, eu, neu, tp, nt)
        half(rim_d, ed, ned, bt, nb)
        axis_edges.extend([ax_l, ax_r])
        # up-faces of the two axis spokes: first and last fan triangle
        axis_faces.extend([f_up, f_up + k_fan - 1])
        return (w_vert, nt, nb, neu, ned), 2.0 * rho

    lead = max(1.0, L / 2.0)
    cur, adv = flat_run(cur, lead)
    arc += adv
    gap = L - 2.0 * rho
    for i in range(n_beads):
        if i > 0:
            cur, adv = flat_run(cur, gap)
            arc += adv
        marks.append(arc + rho)
        cur, adv = bead_block(cur)
        arc += adv
    cur, adv = flat_run(cur, lead)
    arc += adv

    m_complex = b.build()

    girths = vertex_link_girths(m_complex.base)
    bad = [i for i, g in enumerate(girths) if g < TWO_PI - 1e-9]
    if bad:
        raise ConstructionError(f"link girth below 2*pi at vertices {bad}")

    segs = []
    for e, f in zip(axis_edges, axis_faces):
        u, w = m_complex.base.edges[e]
        darts = m_complex.base.faces[f]
        i = next(i for i, (ei, _) in enumerate(darts) if ei == e)
        sign = darts[i][1]
        chart = m_complex.charts[f]
        pa, pb = chart[i], chart[(i + 1) % 3]
        segs.append((f, pa, pb) if sign == 1 else (f, pb, pa))
    waypoints = [m_complex.vertex_location(m_complex.base.edges[axis_edges[0]][0])]
    waypoints += [m_complex.vertex_location(m_complex.base.edges[e][1]) for e in axis_edges]
    gamma = GeodesicPath(tuple(segs), tuple(waypoints))
    params = ContractionParams(epsilon, L, r_min=L if n_beads > 1 else None)
    mg = MarkedGeodesic(gamma, tuple(marks), params)
    return m_complex.with_marks(mg), mg
