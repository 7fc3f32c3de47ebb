"""CAT(-1) vertex detection for cube complexes via their links.

Links are supplied directly as simplicial data (vertices, edges, optional
triangles).  A vertex of a CAT(0) cube complex is CAT(-1) when its link has
no induced 4-cycle; the flag condition is checked up to dimension 2 to
validate inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .errors import InvalidLinkError, MalformedComplexError

__all__ = [
    "SimplicialLink",
    "has_induced_4cycle",
    "is_flag",
    "classify_cat_minus1_vertices",
    "CubeLinkReport",
]


@dataclass(frozen=True)
class SimplicialLink:
    n_vertices: int
    edges: frozenset[frozenset[int]] = field(default_factory=frozenset)
    triangles: frozenset[frozenset[int]] = field(default_factory=frozenset)

    @staticmethod
    def from_lists(n_vertices: int,
                   edges: Iterable[tuple[int, int]],
                   triangles: Iterable[tuple[int, int, int]] = ()) -> "SimplicialLink":
        e = frozenset(frozenset(pair) for pair in edges)
        t = frozenset(frozenset(tri) for tri in triangles)
        return SimplicialLink(n_vertices, e, t)

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2:
                raise MalformedComplexError(f"edge {sorted(e)} is not a 2-set")
            if any(not 0 <= v < self.n_vertices for v in e):
                raise MalformedComplexError(f"edge {sorted(e)} out of range")
        for t in self.triangles:
            if len(t) != 3:
                raise MalformedComplexError(f"triangle {sorted(t)} is not a 3-set")
            for pair in combinations(sorted(t), 2):
                if frozenset(pair) not in self.edges:
                    raise MalformedComplexError(
                        f"triangle {sorted(t)} misses edge {pair}")

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n_vertices)]
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return adj


def has_induced_4cycle(link: SimplicialLink) -> tuple[bool, tuple[int, int, int, int] | None]:
    """Detect an induced 4-cycle in the 1-skeleton.

    Scans non-adjacent vertex pairs (a, c) for two non-adjacent common
    neighbors b, d: then a-b-c-d is a 4-cycle with both diagonals absent.
    Returns (found, witness) with the witness in cycle order.
    """
    adj = link.adjacency()
    for a, c in combinations(range(link.n_vertices), 2):
        if c in adj[a]:
            continue
        common = sorted(adj[a] & adj[c])
        for b, d in combinations(common, 2):
            if d not in adj[b]:
                return True, (a, b, c, d)
    return False, None


def is_flag(link: SimplicialLink) -> tuple[bool, tuple[int, int, int] | None]:
    """Flag condition up to dimension 2: every triangle of the 1-skeleton
    must span a 2-simplex.  Returns (flag, offending triple or None)."""
    adj = link.adjacency()
    for a in range(link.n_vertices):
        for b, c in combinations(sorted(n for n in adj[a] if n > a), 2):
            if c in adj[b] and frozenset((a, b, c)) not in link.triangles:
                return False, (a, b, c)
    return True, None


@dataclass(frozen=True)
class CubeLinkVerdict:
    vertex: object
    cat_minus_one: bool
    witness: tuple[int, int, int, int] | None


@dataclass(frozen=True)
class CubeLinkReport:
    verdicts: tuple[CubeLinkVerdict, ...]
    n_cat_minus_one: int
    annotation: str | None

    @property
    def n_vertices(self) -> int:
        return len(self.verdicts)


_DICHOTOMY_NOTE = (
    "at least one CAT(-1) vertex: a group acting geometrically and "
    "essentially on this cube complex is virtually cyclic or acylindrically "
    "hyperbolic")


def classify_cat_minus1_vertices(links: Mapping[object, SimplicialLink]) -> CubeLinkReport:
    """Classify each vertex by its link: CAT(-1) iff no induced 4-cycle.

    Every link must pass the flag condition, otherwise the input is not a
    CAT(0) cube complex and is rejected.  No group-theoretic conclusion is
    computed; a positive count only attaches the dichotomy annotation.
    """
    verdicts = []
    for name, link in links.items():
        flag, offender = is_flag(link)
        if not flag:
            raise InvalidLinkError(
                f"link of vertex {name!r} is not flag: empty triangle {offender}")
        found, witness = has_induced_4cycle(link)
        verdicts.append(CubeLinkVerdict(name, not found, witness))
    count = sum(1 for v in verdicts if v.cat_minus_one)
    sorted_verdicts = tuple(sorted(verdicts, key=lambda v: repr(v.vertex)))
    return CubeLinkReport(sorted_verdicts, count,
                          _DICHOTOMY_NOTE if count else None)
