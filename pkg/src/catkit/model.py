"""Exact computation in the model planes of curvature kappa <= 0.

The flat plane is E^2 with cartesian coordinates.  Negatively curved planes
are handled on the unit hyperboloid {x0^2 - x1^2 - x2^2 = 1, x0 > 0} with the
Minkowski pairing; a plane of curvature kappa < 0 rescales unit-hyperboloid
lengths by 1/sqrt(-kappa).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .errors import (
    DomainError,
    InvalidTriangleError,
    ModelMismatchError,
    NoLimitError,
    NoSuchTriangleError,
)

__all__ = [
    "CurvatureClass",
    "FLAT",
    "HYPERBOLIC",
    "ModelPoint",
    "TriangleSides",
    "TriangleAngles",
    "model_distance",
    "comparison_angles",
    "angle_from_angles_and_side",
    "embed_comparison_triangle",
    "geodesic_point",
    "alexandrov_angle",
    "cat_inequality_check",
]

_HYPERBOLOID_TOL = 1e-12


@dataclass(frozen=True)
class CurvatureClass:
    """Curvature tag of a model plane; only kappa <= 0 is supported."""

    kappa: float

    def __post_init__(self):
        if not math.isfinite(self.kappa) or self.kappa > 0:
            raise DomainError(f"model curvature must be <= 0, got {self.kappa}")

    @property
    def is_flat(self) -> bool:
        return self.kappa == 0.0

    @property
    def scale(self) -> float:
        """sqrt(-kappa): converts native lengths to unit-hyperboloid lengths."""
        return math.sqrt(-self.kappa)


FLAT = CurvatureClass(0.0)
HYPERBOLIC = CurvatureClass(-1.0)


def _curv(kappa: CurvatureClass | float) -> CurvatureClass:
    return kappa if isinstance(kappa, CurvatureClass) else CurvatureClass(float(kappa))


@dataclass(frozen=True)
class ModelPoint:
    """A point of a model plane.

    Flat points carry (x, y); hyperbolic points carry a unit-hyperboloid
    triple (x0, x1, x2) regardless of kappa (distances rescale by the
    curvature class).
    """

    kappa: CurvatureClass
    coords: tuple[float, ...]

    @staticmethod
    def flat(x: float, y: float) -> "ModelPoint":
        return ModelPoint(FLAT, (float(x), float(y)))

    @staticmethod
    def hyperboloid(x0: float, x1: float, x2: float,
                    kappa: CurvatureClass | float = HYPERBOLIC) -> "ModelPoint":
        """Build a point from (possibly unnormalized) hyperboloid coordinates."""
        kappa = _curv(kappa)
        if kappa.is_flat:
            raise DomainError("hyperboloid coordinates need kappa < 0")
        q = x0 * x0 - x1 * x1 - x2 * x2
        if q <= 0 or x0 <= 0:
            raise DomainError("coordinates do not lie inside the forward light cone")
        r = math.sqrt(q)
        p = ModelPoint(kappa, (x0 / r, x1 / r, x2 / r))
        assert abs(_mdot(p.coords, p.coords) - 1.0) < _HYPERBOLOID_TOL
        return p


def _mdot(u: Sequence[float], v: Sequence[float]) -> float:
    """Minkowski pairing with signature (+, -, -)."""
    return u[0] * v[0] - u[1] * v[1] - u[2] * v[2]


def _check_same_model(p: ModelPoint, q: ModelPoint) -> CurvatureClass:
    if p.kappa != q.kappa:
        raise ModelMismatchError(
            f"points live in distinct model planes (kappa {p.kappa.kappa} vs {q.kappa.kappa})")
    return p.kappa


def model_distance(p: ModelPoint, q: ModelPoint) -> float:
    """Distance in the common model plane of p and q."""
    kappa = _check_same_model(p, q)
    if kappa.is_flat:
        return math.hypot(p.coords[0] - q.coords[0], p.coords[1] - q.coords[1])
    # chordal form: sinh^2(d/2) = (<p,q> - 1)/2 = -<p-q, p-q>/4, computed from
    # the difference vector so that nearby points lose no precision
    u0 = p.coords[0] - q.coords[0]
    u1 = p.coords[1] - q.coords[1]
    u2 = p.coords[2] - q.coords[2]
    m = max(u1 * u1 + u2 * u2 - u0 * u0, 0.0)
    return 2.0 * math.asinh(0.5 * math.sqrt(m)) / kappa.scale


@dataclass(frozen=True)
class TriangleSides:
    """Side lengths of a triangle; weak triangle inequality is checked on use."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if min(self.a, self.b, self.c) <= 0:
            raise InvalidTriangleError(f"side lengths must be positive: {self}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


def _sides(sides: TriangleSides | Sequence[float]) -> TriangleSides:
    if isinstance(sides, TriangleSides):
        return sides
    return TriangleSides(*map(float, sides))


class TriangleAngles(NamedTuple):
    """Angles in radians, each opposite the corresponding side."""

    alpha: float
    beta: float
    gamma: float
    degenerate: bool = False

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)


def comparison_angles(sides: TriangleSides | Sequence[float],
                      kappa: CurvatureClass | float) -> TriangleAngles:
    """Angles of the comparison triangle in the model plane of curvature kappa.

    Angle ``alpha`` is opposite side ``a`` and so on.  A degenerate triple
    (equality in the triangle inequality) yields angles (pi, 0, 0) up to
    ordering, flagged rather than rejected; a strict violation raises.
    """
    sides = _sides(sides)
    kappa = _curv(kappa)
    a, b, c = sides.as_tuple()
    if not kappa.is_flat:
        sc = kappa.scale
        a, b, c = a * sc, b * sc, c * sc
    s = 0.5 * (a + b + c)
    defects = (s - a, s - b, s - c)
    tol = 1e-12 * s
    worst = min(defects)
    if worst < -tol:
        raise InvalidTriangleError(f"triangle inequality violated for sides {sides}")
    if worst <= tol:
        # collinear: the angle opposite the longest side is pi
        flat_idx = defects.index(worst)
        angles = [0.0, 0.0, 0.0]
        angles[flat_idx] = math.pi
        return TriangleAngles(*angles, degenerate=True)
    if kappa.is_flat:
        f = (s, *defects)
    else:
        f = (math.sinh(s), *(math.sinh(d) for d in defects))
    # half-angle form: tan(alpha/2) = sqrt(f(s-b) f(s-c) / (f(s) f(s-a)))
    alpha = 2.0 * math.atan2(math.sqrt(f[2] * f[3]), math.sqrt(f[0] * f[1]))
    beta = 2.0 * math.atan2(math.sqrt(f[3] * f[1]), math.sqrt(f[0] * f[2]))
    gamma = 2.0 * math.atan2(math.sqrt(f[1] * f[2]), math.sqrt(f[0] * f[3]))
    return TriangleAngles(alpha, beta, gamma)


def angle_from_angles_and_side(alpha: float, beta: float, c: float,
                               kappa: CurvatureClass | float = HYPERBOLIC,
                               tol: float = 1e-9) -> float:
    """Third angle of the hyperbolic triangle with angles alpha, beta and
    included side c:  cos(gamma) = sin(alpha) sin(beta) cosh(c) - cos(alpha) cos(beta).
    """
    kappa = _curv(kappa)
    if kappa.is_flat:
        raise DomainError("angle_from_angles_and_side needs kappa < 0")
    if not (0.0 < alpha < math.pi and 0.0 < beta < math.pi):
        raise DomainError("angles must lie in (0, pi)")
    if c < 0:
        raise DomainError("side length must be nonnegative")
    ch = math.cosh(c * kappa.scale)
    cosg = math.sin(alpha) * math.sin(beta) * ch - math.cos(alpha) * math.cos(beta)
    if abs(cosg) > 1.0 + tol:
        raise NoSuchTriangleError(
            f"no hyperbolic triangle with angles ({alpha}, {beta}) and included side {c}")
    return math.acos(min(1.0, max(-1.0, cosg)))


def embed_comparison_triangle(
        sides: TriangleSides | Sequence[float],
        kappa: CurvatureClass | float) -> tuple[ModelPoint, ModelPoint, ModelPoint]:
    """Embed the comparison triangle: first vertex at the origin, second along
    the base axis at distance a, third in the upper half plane, so that the
    pairwise distances are (P0P1, P1P2, P2P0) = (a, b, c).

    Degenerate side triples embed collinearly; use :func:`comparison_angles`
    for the degeneracy flag.
    """
    sides = _sides(sides)
    kappa = _curv(kappa)
    a, b, c = sides.as_tuple()
    beta = comparison_angles(sides, kappa).beta  # angle at the origin vertex
    if kappa.is_flat:
        p0 = ModelPoint.flat(0.0, 0.0)
        p1 = ModelPoint.flat(a, 0.0)
        p2 = ModelPoint.flat(c * math.cos(beta), c * math.sin(beta))
        return p0, p1, p2
    sc = kappa.scale
    ah, ch_ = a * sc, c * sc
    p0 = ModelPoint(kappa, (1.0, 0.0, 0.0))
    p1 = ModelPoint(kappa, (math.cosh(ah), math.sinh(ah), 0.0))
    p2 = ModelPoint(kappa, (math.cosh(ch_),
                            math.sinh(ch_) * math.cos(beta),
                            math.sinh(ch_) * math.sin(beta)))
    return p0, p1, p2


def geodesic_point(p: ModelPoint, q: ModelPoint, s: float) -> ModelPoint:
    """Point at arc length s from p along the geodesic [p, q]."""
    kappa = _check_same_model(p, q)
    d = model_distance(p, q)
    if d == 0.0:
        return p
    if kappa.is_flat:
        t = s / d
        return ModelPoint(kappa, (p.coords[0] + t * (q.coords[0] - p.coords[0]),
                                  p.coords[1] + t * (q.coords[1] - p.coords[1])))
    sc = kappa.scale
    dh, sh = d * sc, s * sc
    dot = _mdot(p.coords, q.coords)
    sinh_d = math.sinh(dh)
    u = tuple((q.coords[i] - dot * p.coords[i]) / sinh_d for i in range(3))
    ch, sn = math.cosh(sh), math.sinh(sh)
    x = tuple(ch * p.coords[i] + sn * u[i] for i in range(3))
    return ModelPoint.hyperboloid(*x, kappa=kappa)


class AlexandrovAngle(NamedTuple):
    angle: float
    error: float


def _flat_angle_from_distances(x: float, y: float, z: float) -> float:
    """Euclidean comparison angle at the apex of a triangle with legs x, y
    and opposite side z, via the stable half-angle form."""
    if z == 0.0:
        return 0.0
    return comparison_angles((z, y, x), FLAT).alpha


def alexandrov_angle(path_a: Sequence, path_b: Sequence,
                     dist: Callable[[object, object], float],
                     tol: float = 1e-8) -> AlexandrovAngle:
    """Alexandrov angle at the common start of two sampled geodesic paths.

    ``path_a`` and ``path_b`` start at the same point and list sample points
    at geometrically decreasing parameters.  Euclidean comparison angles are
    extrapolated to parameter zero (Richardson in the squared scale); the
    returned error estimate is the last extrapolation increment.  Raises
    :class:`NoLimitError` when the samples oscillate beyond tolerance.
    """
    if len(path_a) < 3 or len(path_b) < 3:
        raise ValueError("need the base point and at least two samples per path")
    p, pb = path_a[0], path_b[0]
    if dist(p, pb) > 1e-9:
        raise ValueError("paths must start at the same point")
    n = min(len(path_a), len(path_b)) - 1
    angles, scales = [], []
    for i in range(1, n + 1):
        x = dist(p, path_a[i])
        y = dist(p, path_b[i])
        z = dist(path_a[i], path_b[i])
        if x <= 0 or y <= 0:
            raise ValueError("sample coincides with the base point")
        angles.append(_flat_angle_from_distances(x, y, z))
        scales.append((0.5 * (x + y)) ** 2)
    # Richardson / Neville extrapolation to scale 0
    tab = list(angles)
    best, prev_best = tab[0], None
    err = math.inf
    for j in range(1, len(tab)):
        for i in range(len(tab) - j):
            u_i, u_ij = scales[i], scales[i + j]
            tab[i] = (u_i * tab[i + 1] - u_ij * tab[i]) / (u_i - u_ij)
        prev_best, best = best, tab[0]
        err = abs(best - prev_best)
        if err < tol:
            return AlexandrovAngle(best, err)
    # no convergence: diagnose oscillation of the raw comparison angles
    diffs = [angles[i + 1] - angles[i] for i in range(len(angles) - 1)]
    osc = any(d1 * d2 < -tol * tol for d1, d2 in zip(diffs, diffs[1:]))
    raise NoLimitError(
        "comparison angles did not converge"
        + (" (oscillating sample sequence)" if osc else f" (residual {err:.3g})"))


@dataclass(frozen=True)
class CatInequalityResult:
    passed: bool
    worst_violation: float
    witness: tuple[tuple[int, float], tuple[int, float]] | None
    samples: int


def cat_inequality_check(sides: TriangleSides | Sequence[float],
                         oracle: Callable[[tuple[int, float], tuple[int, float]], float],
                         kappa: CurvatureClass | float,
                         samples: int = 100,
                         seed: int = 0,
                         tol: float = 1e-9) -> CatInequalityResult:
    """Sampled check of the CAT(kappa) inequality for one triangle.

    The original triangle is known through ``oracle((i, s), (j, t))`` giving
    the distance between the point at arc length s along side i and the point
    at arc length t along side j (side 0 joins vertices 0-1 and has length a,
    side 1 joins 1-2, side 2 joins 2-0).  Each sampled pair is compared with
    the corresponding comparison points in the model plane; a violating pair
    is returned as witness.
    """
    import numpy as np

    sides = _sides(sides)
    kappa = _curv(kappa)
    p0, p1, p2 = embed_comparison_triangle(sides, kappa)
    corners = (p0, p1, p2)
    lengths = sides.as_tuple()
    rng = np.random.default_rng(seed)
    worst = 0.0
    witness = None
    for _ in range(samples):
        i, j = int(rng.integers(0, 3)), int(rng.integers(0, 3))
        s = float(rng.uniform(0.0, lengths[i]))
        t = float(rng.uniform(0.0, lengths[j]))
        x_bar = geodesic_point(corners[i], corners[(i + 1) % 3], s)
        y_bar = geodesic_point(corners[j], corners[(j + 1) % 3], t)
        d_orig = oracle((i, s), (j, t))
        d_comp = model_distance(x_bar, y_bar)
        violation = d_orig - d_comp
        if violation > worst:
            worst = violation
            witness = ((i, s), (j, t))
    passed = worst <= tol
    return CatInequalityResult(passed, worst, None if passed else witness, samples)
