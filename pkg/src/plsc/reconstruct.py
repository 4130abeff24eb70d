"""Recovery of diagram families from their average landscape.

The critical points of a diagram's landscape are its interval endpoints,
interval midpoints, and the midpoints of overlaps of interval pairs that
properly cross; the endpoint-midpoint-endpoint triples are three-term
arithmetic progressions.  When a family of generic diagrams has pairwise
disjoint critical sets and no stray progressions among the pooled
critical points ("arithmetic independence"), the progressions of the
average landscape's critical points split into one bipartite graph per
diagram, and each diagram is recovered by pairing every birth with its
largest death neighbour.  Reconstruction always re-verifies its output
by recomputing the average landscape exactly.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .diagram import PersistenceDiagram, is_connected, is_generic, repeated_coordinate
from .errors import PreconditionError
from .landscape import (Landscape, average_of, critical_points, landscape_of,
                        linear_combination)
from .rational import Rational, format_rational, to_rational

Triple = tuple[Rational, Rational, Rational]


# ---------------------------------------------------------------------------
# critical sets and bipartite graphs of single diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LabeledCriticalSet:
    """Critical points of one diagram's landscape, with labeled progressions.

    ``interval_triples`` holds (birth, midpoint, death) per diagram point;
    ``intersection_triples`` holds (b2, overlap midpoint, d1) per properly
    crossing pair b1 < b2 < d1 < d2.  Every triple is a three-term
    arithmetic progression inside ``points``.
    """

    points: frozenset
    interval_triples: frozenset
    intersection_triples: frozenset


def critical_set(d: PersistenceDiagram) -> LabeledCriticalSet:
    pts = set()
    interval = set()
    crossing = set()
    for a, b in d.points:
        m = (a + b) / 2
        pts.update((a, m, b))
        interval.add((a, m, b))
    for aj, bj in d.points:
        for ak, bk in d.points:
            if aj < ak < bj < bk:
                m = (ak + bj) / 2
                pts.add(m)
                crossing.add((ak, m, bj))
    return LabeledCriticalSet(frozenset(pts), frozenset(interval), frozenset(crossing))


@dataclass(frozen=True)
class BipartiteGraph:
    """Births vs deaths of a generic diagram, with own and crossing edges."""

    births: frozenset
    deaths: frozenset
    edges: frozenset

    def __post_init__(self) -> None:
        if self.births & self.deaths:
            raise ValueError("birth and death vertex sets must be disjoint")
        for u, v in self.edges:
            if u not in self.births or v not in self.deaths:
                raise ValueError(f"edge ({u}, {v}) leaves the vertex sets")


def bipartite_graph(d: PersistenceDiagram) -> BipartiteGraph:
    """Graph with edges (birth, death) per point plus (b2, d1) per proper
    crossing b1 < b2 < d1 < d2; requires a generic diagram."""
    dup = repeated_coordinate(d)
    if dup is not None:
        raise PreconditionError(
            f"diagram is not generic: {format_rational(dup)} appears twice")
    edges = set(d.points)
    for aj, bj in d.points:
        for ak, bk in d.points:
            if aj < ak < bj < bk:
                edges.add((ak, bj))
    return BipartiteGraph(
        frozenset(a for a, _ in d.points),
        frozenset(b for _, b in d.points),
        frozenset(edges),
    )


def recover_from_bipartite(g: BipartiteGraph) -> PersistenceDiagram:
    """Pair every birth with its largest death neighbour."""
    neighbours = defaultdict(set)
    for u, v in g.edges:
        neighbours[u].add(v)
    pts = []
    for u in g.births:
        if not neighbours[u]:
            raise PreconditionError(
                f"birth vertex {format_rational(u)} has no incident edge")
        pts.append((u, max(neighbours[u])))
    try:
        return PersistenceDiagram(tuple(pts))
    except ValueError as exc:
        raise PreconditionError(
            f"not the bipartite graph of a diagram: {exc}") from None


# ---------------------------------------------------------------------------
# arithmetic progressions
# ---------------------------------------------------------------------------

def find_progressions(values: Iterable[Rational]) -> list[Triple]:
    """All (x, (x+y)/2, y) with x < y and the midpoint in the set.

    Values are rescaled to integers (by the lcm of denominators) so the
    quadratic pair scan runs on machine integers; results are exact and
    ordered lexicographically by (x, y).
    """
    vals = sorted({to_rational(v) for v in values})
    if len(vals) < 3:
        return []
    scale = math.lcm(*(int(v.denominator) for v in vals))
    ints = [int(v * scale) for v in vals]
    doubled = {2 * x: i for i, x in enumerate(ints)}
    out = []
    for i, x in enumerate(ints):
        for j in range(i + 1, len(ints)):
            mid = doubled.get(x + ints[j])
            if mid is not None:
                out.append((vals[i], vals[mid], vals[j]))
    return out


# ---------------------------------------------------------------------------
# arithmetic independence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndependenceReport:
    """Outcome of the arithmetic-independence check; truthy iff it passed.

    ``condition`` names the first violated requirement (1 = some diagram
    not generic, 2 = critical sets not pairwise disjoint, 3 = a stray
    arithmetic progression), with the offending values in ``detail``.
    """

    independent: bool
    condition: Optional[int] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.independent


def is_arithmetically_independent(
    family: Sequence[PersistenceDiagram],
) -> IndependenceReport:
    """Check the three reconstruction preconditions; never raises."""
    family = tuple(family)
    csets = []
    for idx, d in enumerate(family, start=1):
        dup = repeated_coordinate(d)
        if dup is not None:
            return IndependenceReport(
                False, 1,
                f"diagram {idx} is not generic: {format_rational(dup)} appears twice")
        csets.append(critical_set(d))

    owner: dict = {}
    for idx, cs in enumerate(csets, start=1):
        for v in cs.points:
            if v in owner and owner[v] != idx:
                return IndependenceReport(
                    False, 2,
                    f"critical sets of diagrams {owner[v]} and {idx} "
                    f"share {format_rational(v)}")
            owner[v] = idx

    if not family:
        return IndependenceReport(True)

    # Critical points are invariant under positive scaling, so the plain sum
    # of the landscapes has the same critical points as their average.
    pooled = linear_combination([(1, landscape_of(d)) for d in family])
    allowed = set()
    for cs in csets:
        allowed |= cs.interval_triples | cs.intersection_triples
    for prog in find_progressions(critical_points(pooled)):
        if prog not in allowed:
            x, m, y = prog
            return IndependenceReport(
                False, 3,
                f"progression ({format_rational(x)}, {format_rational(m)}, "
                f"{format_rational(y)}) is not an interval or intersection triple")
    return IndependenceReport(True)


# ---------------------------------------------------------------------------
# reconstruction
# ---------------------------------------------------------------------------

def _scaled_landscape(l: Landscape, c: Rational) -> Landscape:
    return Landscape(tuple(f.scaled(c) for f in l.levels))


def reconstruct_from_average(avg: Landscape) -> tuple[PersistenceDiagram, ...]:
    """Recover the family whose average landscape is ``avg``.

    ``avg`` may be any positive multiple of the true average.  Requires the
    averaged diagrams to be connected and arithmetically independent; any
    violation surfaces as a :class:`PreconditionError`, including through
    the final exact re-verification.  Diagrams are returned sorted by
    smallest birth.
    """
    if not avg.levels:
        return ()

    progressions = find_progressions(critical_points(avg))
    if not progressions:
        raise PreconditionError(
            "no arithmetic progressions among the critical points; "
            "input is not an average of diagram landscapes")
    firsts = {x for x, _, _ in progressions}
    thirds = {y for _, _, y in progressions}
    both = firsts & thirds
    if both:
        raise PreconditionError(
            f"{format_rational(min(both))} is both a first and a third "
            "progression term; averaged diagrams are not arithmetically "
            "independent")

    # Union-find over progression endpoints; each component must be the
    # bipartite graph of one recovered diagram.
    parent: dict = {}

    def find(v):
        while parent[v] is not v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x, _, y in progressions:
        parent.setdefault(x, x)
        parent.setdefault(y, y)
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    edges_by_root = defaultdict(list)
    for x, _, y in progressions:
        edges_by_root[find(x)].append((x, y))

    diagrams = []
    for root in edges_by_root:
        edges = edges_by_root[root]
        graph = BipartiteGraph(
            frozenset(x for x, _ in edges),
            frozenset(y for _, y in edges),
            frozenset(edges),
        )
        recovered = recover_from_bipartite(graph)
        if not is_generic(recovered):
            raise PreconditionError(
                "a recovered component is not a generic diagram")
        if bipartite_graph(recovered) != graph:
            raise PreconditionError(
                "a component is not the bipartite graph of its recovered diagram")
        diagrams.append(recovered)
    diagrams.sort(key=lambda d: d.points[0][0])

    mean = average_of([landscape_of(d) for d in diagrams])
    top = mean.levels[0]
    t_peak, v_peak = max(top.breakpoints, key=lambda bp: bp[1])
    scale = avg.level(1).value(t_peak) / v_peak
    if not scale > 0 or _scaled_landscape(mean, scale) != avg:
        raise PreconditionError(
            "verification failed: recovered diagrams do not reproduce the "
            "input landscape")
    return tuple(diagrams)
