"""Exact persistence diagrams and metrics between them.

A diagram is a finite multiset of ``(birth, death)`` pairs of exact
rationals with ``birth < death``; no infinite intervals.  The module
provides the text file format, the genericity and barcode-connectivity
predicates, the exact bottleneck distance (with an exhaustive oracle for
small inputs), the sup product metric over diagram families, and the two
perturbation constructions ``connectify`` and ``make_generic``.

All values are immutable and all functions are pure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import InputError
from .rational import Rational, RationalLike, format_rational, parse_rational

Point = tuple[Rational, Rational]

_NONFINITE = {"inf", "+inf", "-inf", "infinity", "+infinity", "-infinity", "nan"}


def _as_point(raw) -> Point:
    from .rational import to_rational

    a, b = raw
    a, b = to_rational(a), to_rational(b)
    if not a < b:
        raise ValueError(f"birth must be strictly below death, got ({a}, {b})")
    return (a, b)


@dataclass(frozen=True)
class PersistenceDiagram:
    """Finite multiset of (birth, death) pairs, canonically sorted.

    Accepts any iterable of coordinate pairs; coordinates may be ints,
    rationals, ``Fraction`` or literal strings (floats are rejected).
    Multiset equality is tuple equality of the sorted point list.
    """

    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = sorted(_as_point(p) for p in self.points)
        object.__setattr__(self, "points", tuple(pts))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __str__(self) -> str:
        inner = ", ".join(f"({format_rational(a)}, {format_rational(b)})" for a, b in self.points)
        return "{" + inner + "}"


EMPTY_DIAGRAM = PersistenceDiagram(())

#: A family is an ordered sequence of diagrams; order matters only for the
#: product metric, reconstruction treats it as a set.
DiagramFamily = tuple[PersistenceDiagram, ...]


# ---------------------------------------------------------------------------
# file format: one `birth,death` per line, `#` comments, blank lines ignored
# ---------------------------------------------------------------------------

def parse_diagram(text: str) -> PersistenceDiagram:
    """Parse the diagram file format, reporting line numbers on errors."""
    pts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != 2:
            raise InputError(f"line {lineno}: expected 'birth,death', got {raw!r}")
        vals = []
        for field in fields:
            if field.strip().lower() in _NONFINITE:
                raise InputError(f"line {lineno}: non-finite literal {field.strip()!r}")
            try:
                vals.append(parse_rational(field))
            except ValueError as exc:
                raise InputError(f"line {lineno}: {exc}") from None
        a, b = vals
        if not a < b:
            raise InputError(f"line {lineno}: birth >= death ({format_rational(a)} >= "
                             f"{format_rational(b)})")
        pts.append((a, b))
    return PersistenceDiagram(tuple(pts))


def serialize_diagram(d: PersistenceDiagram) -> str:
    """Render ``d`` so that ``parse_diagram`` recovers the same multiset."""
    return "".join(f"{format_rational(a)},{format_rational(b)}\n" for a, b in d.points)


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def repeated_coordinate(d: PersistenceDiagram) -> Optional[Rational]:
    """First coordinate value shared by two points, or None if generic.

    A diagram is generic when, for every pair of distinct points, the four
    coordinates are pairwise distinct; since birth < death within a point,
    this is equivalent to all 2n coordinate slots holding distinct values.
    """
    seen = set()
    for a, b in d.points:
        for v in (a, b):
            if v in seen:
                return v
            seen.add(v)
    return None


def is_generic(d: PersistenceDiagram) -> bool:
    return repeated_coordinate(d) is None


def is_connected(d: PersistenceDiagram) -> bool:
    """Connectivity of the interval-overlap graph of the barcode.

    Vertices are the closed intervals [birth, death]; edges join intervals
    with nonempty intersection (touching endpoints count).  Empty and
    singleton diagrams are connected.
    """
    pts = d.points
    n = len(pts)
    if n <= 1:
        return True
    # Intervals sorted by birth: a prefix chain covers everything iff each
    # next interval starts no later than the running maximum death.
    reach = pts[0][1]
    for a, b in pts[1:]:
        if a > reach:
            return False
        if b > reach:
            reach = b
    return True


# ---------------------------------------------------------------------------
# bottleneck distance
# ---------------------------------------------------------------------------

def _sup_dist(p: Point, q: Point) -> Rational:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _half_persistence(p: Point) -> Rational:
    return (p[1] - p[0]) / 2


def bottleneck_distance(d1: PersistenceDiagram, d2: PersistenceDiagram) -> Rational:
    """Exact bottleneck distance between two diagrams.

    Minimum over partial matchings of the larger of (i) the sup-metric
    distance of matched pairs and (ii) the half-persistence of unmatched
    points.  The optimum is always one of the finitely many pairwise
    sup-distances or half-persistences, so we binary-search that candidate
    set; feasibility of a threshold is a maximum-bipartite-matching test on
    the standard augmented graph (each diagram extended by one diagonal
    proxy per point of the other, proxies freely matchable to each other).
    All comparisons are exact; the matching itself is purely combinatorial.
    """
    p1, p2 = d1.points, d2.points
    n1, n2 = len(p1), len(p2)
    if n1 == 0 and n2 == 0:
        return Rational(0)

    half1 = [_half_persistence(p) for p in p1]
    half2 = [_half_persistence(p) for p in p2]
    dist = [[_sup_dist(p, q) for q in p2] for p in p1]

    candidates = sorted(set(half1) | set(half2) | {v for row in dist for v in row})
    rank = {c: i for i, c in enumerate(candidates)}

    dist_rank = np.array([[rank[v] for v in row] for row in dist], dtype=np.int64)
    dist_rank = dist_rank.reshape(n1, n2)
    half1_rank = np.array([rank[v] for v in half1], dtype=np.int64)
    half2_rank = np.array([rank[v] for v in half2], dtype=np.int64)

    side = n1 + n2

    def feasible(m: int) -> bool:
        adj = np.zeros((side, side), dtype=bool)
        adj[:n1, :n2] = dist_rank <= m
        adj[np.arange(n1), n2 + np.arange(n1)] = half1_rank <= m
        adj[n1 + np.arange(n2), np.arange(n2)] = half2_rank <= m
        adj[n1:, n2:] = True
        matched = maximum_bipartite_matching(csr_matrix(adj), perm_type="column")
        return bool((matched >= 0).all())

    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid + 1
    return candidates[lo]


def bottleneck_bruteforce(d1: PersistenceDiagram, d2: PersistenceDiagram) -> Rational:
    """Exhaustive bottleneck oracle for tiny inputs (|d1| + |d2| <= 12).

    Enumerates every partial matching directly.  Independent of
    :func:`bottleneck_distance`; used to cross-check it in tests.
    """
    p1, p2 = d1.points, d2.points
    if len(p1) + len(p2) > 12:
        raise ValueError("bottleneck_bruteforce is limited to 12 points total")
    half1 = [_half_persistence(p) for p in p1]
    half2 = [_half_persistence(p) for p in p2]
    dist = [[_sup_dist(p, q) for q in p2] for p in p1]
    n1, n2 = len(p1), len(p2)
    best: Optional[Rational] = None

    def explore(i: int, used: int, worst: Rational) -> None:
        nonlocal best
        if best is not None and worst >= best:
            return  # cost along a branch only grows
        if i == n1:
            total = worst
            for j in range(n2):
                if not used >> j & 1:
                    if half2[j] > total:
                        total = half2[j]
                        if best is not None and total >= best:
                            return
            if best is None or total < best:
                best = total
            return
        explore(i + 1, used, max(worst, half1[i]))
        for j in range(n2):
            if not used >> j & 1:
                explore(i + 1, used | 1 << j, max(worst, dist[i][j]))

    explore(0, 0, Rational(0))
    assert best is not None
    return best


def product_distance(f1: Sequence[PersistenceDiagram],
                     f2: Sequence[PersistenceDiagram]) -> Rational:
    """Sup product metric: max of slotwise bottleneck distances."""
    if len(f1) != len(f2):
        raise ValueError(f"family lengths differ: {len(f1)} vs {len(f2)}")
    if not f1:
        raise ValueError("product_distance requires nonempty families")
    return max(bottleneck_distance(a, b) for a, b in zip(f1, f2))


# ---------------------------------------------------------------------------
# perturbations
# ---------------------------------------------------------------------------

def connectify(d: PersistenceDiagram, eps: RationalLike) -> PersistenceDiagram:
    """Union ``d`` with a ladder of short overlapping intervals.

    The ladder spans [min birth, max death] with rung half-persistence
    below ``eps/2``, so the result is connected and within bottleneck
    distance ``eps`` of ``d``.
    """
    from .rational import to_rational

    eps = to_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not d.points:
        raise ValueError("cannot connectify an empty diagram")
    a = min(p[0] for p in d.points)
    b = max(p[1] for p in d.points)
    span = b - a
    ratio = 2 * span / eps
    n_steps = int(ratio.numerator // ratio.denominator) + 1  # least integer > ratio
    if n_steps < 2:
        n_steps = 2
    h = span / n_steps
    ladder = [(a + (k - 1) * h, a + (k + 1) * h) for k in range(n_steps + 1)]
    return PersistenceDiagram(d.points + tuple(ladder))


def make_generic(d: PersistenceDiagram, eps: RationalLike, seed: int) -> PersistenceDiagram:
    """Random perturbation making every coordinate value distinct.

    Births only move down and deaths only move up, each by less than
    ``eps/2``, so interval overlaps (hence connectivity) are preserved and
    the bottleneck distance to the input stays below ``eps``.  Already
    generic diagrams are returned unchanged.  Deterministic per ``seed``.
    """
    from .rational import to_rational

    eps = to_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if is_generic(d):
        return d
    rng = random.Random(seed)
    denom = 1 << 20
    for _ in range(64):
        pts = [
            (a - eps * rng.randrange(denom) / (2 * denom),
             b + eps * rng.randrange(denom) / (2 * denom))
            for a, b in d.points
        ]
        candidate = PersistenceDiagram(tuple(pts))
        if is_generic(candidate):
            return candidate
        denom <<= 1  # collisions are finitely many; refine the grid and retry
    raise RuntimeError("make_generic failed to escape coordinate collisions")
