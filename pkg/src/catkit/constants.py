"""Closed-form contraction constants.

All formulas are elementary combinations of cosh/arccos; they are exposed
separately from the metric machinery because downstream code treats them as
exact scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "ContractionParams",
    "max_base_angle",
    "eta",
    "contraction_bound",
    "shadow_scale",
    "prop1_radii",
]


def max_base_angle(d: float) -> float:
    """Largest possible base angle of an isosceles hyperbolic triangle with
    legs d and apex angle >= pi/2:  arccos(sqrt(cosh d / (1 + cosh d))).

    Decreasing in d, with value pi/4 at d = 0.
    """
    if d < 0:
        raise DomainError(f"length must be nonnegative, got {d}")
    ch = math.cosh(d)
    return math.acos(math.sqrt(ch / (1.0 + ch)))


def eta(epsilon: float) -> float:
    """Cap on the number of epsilon-separated negatively-curved waypoints a
    projection window can contain:  2*pi / (pi - 4*max_base_angle(epsilon)).

    Finite and strictly decreasing for epsilon > 0; raises for epsilon <= 0,
    where the denominator vanishes.
    """
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    denom = math.pi - 4.0 * max_base_angle(epsilon)
    return 2.0 * math.pi / denom


@dataclass(frozen=True)
class ContractionParams:
    """Constants attached to a geodesic through negatively curved spots.

    epsilon: radius of the CAT(-1) balls at the marked points.
    L: upper bound for the gap between consecutive marked points.
    r_min: optional lower bound for that gap; when given it must satisfy
        L >= r_min > 2*epsilon (the bound formula itself only needs
        epsilon and L, so r_min may be omitted).
    """

    epsilon: float
    L: float
    r_min: float | None = None

    def __post_init__(self):
        if self.epsilon <= 0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")
        if self.L <= 0:
            raise DomainError(f"L must be positive, got {self.L}")
        if self.r_min is not None:
            if not (self.L >= self.r_min > 2.0 * self.epsilon):
                raise DomainError(
                    f"need L >= r_min > 2*epsilon, got L={self.L}, "
                    f"r_min={self.r_min}, epsilon={self.epsilon}")


def contraction_bound(params: ContractionParams | float, L: float | None = None) -> float:
    """Projection-diameter bound  B = 2*(eta(epsilon) + 2)*L + 3*epsilon.

    Accepts either a :class:`ContractionParams` or the pair (epsilon, L).
    """
    if isinstance(params, ContractionParams):
        epsilon, length = params.epsilon, params.L
    else:
        if L is None:
            raise TypeError("contraction_bound needs ContractionParams or (epsilon, L)")
        epsilon, length = float(params), float(L)
        ContractionParams(epsilon, length)  # validate
    return 2.0 * (eta(epsilon) + 2.0) * length + 3.0 * epsilon


def shadow_scale(delta: float, epsilon: float) -> float:
    """Thales scale factor k = delta/epsilon + 1.

    For a geodesic ray r from o, every x in the ball B(r(t + k*R), R) with
    t <= delta has [o, x] meeting B(r(t), epsilon).
    """
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    if delta < 0:
        raise DomainError(f"delta must be nonnegative, got {delta}")
    return delta / epsilon + 1.0


def prop1_radii(epsilon: float, diam_quotient: float) -> tuple[float, float]:
    """Shadow radius R = 2*epsilon + diam and the effective lower bound
    K >= R + 2*epsilon for the marked-ray construction.

    The compactness constant k(R, epsilon, 2*epsilon) entering the true
    maximum is non-constructive, so only this branch is reported.
    """
    if epsilon <= 0 or diam_quotient < 0:
        raise DomainError("need epsilon > 0 and diam_quotient >= 0")
    big_r = 2.0 * epsilon + diam_quotient
    return big_r, big_r + 2.0 * epsilon
