"""Generators for test families of diagrams.

``counterexample_pair`` builds the mirrored staircase pair whose
landscapes stay sup-close while the bottleneck distance grows linearly.
``random_diagram`` draws grid-rational diagrams deterministically per
seed, and ``random_independent_family`` produces connected,
arithmetically independent families by ladder-connecting, making
generic, and re-perturbing on successively finer grids until the
independence checker certifies the family.
"""

from __future__ import annotations

import random
from typing import Sequence

from .diagram import (PersistenceDiagram, connectify, is_connected, make_generic)
from .rational import Rational, RationalLike, to_rational
from .reconstruct import bipartite_graph, is_arithmetically_independent


def counterexample_pair(n: int) -> tuple[PersistenceDiagram, PersistenceDiagram]:
    """Mirror-symmetric diagrams with sup landscape distance 1 but
    bottleneck distance 2n+1.

    The first diagram holds (-3n-1+2i, 3n-1+2i) for i = 1..n plus the
    reflections (x, y) -> (-y, -x); the second holds (-3n+2i, 3n+2i) for
    i = 1..n-1 with reflections, plus (-3n, 3n) and (-n, n).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    pts1 = []
    for i in range(1, n + 1):
        x, y = -3 * n - 1 + 2 * i, 3 * n - 1 + 2 * i
        pts1 += [(x, y), (-y, -x)]
    pts2 = []
    for i in range(1, n):
        x, y = -3 * n + 2 * i, 3 * n + 2 * i
        pts2 += [(x, y), (-y, -x)]
    pts2 += [(-3 * n, 3 * n), (-n, n)]
    return (PersistenceDiagram(tuple(pts1)), PersistenceDiagram(tuple(pts2)))


def random_diagram(count: int, lo: RationalLike, hi: RationalLike,
                   seed: int) -> PersistenceDiagram:
    """``count`` points with coordinates on a 512-step grid in [lo, hi]."""
    lo, hi = to_rational(lo), to_rational(hi)
    if not lo < hi:
        raise ValueError(f"bad range: lo={lo} must be below hi={hi}")
    if count < 0:
        raise ValueError("count must be nonnegative")
    rng = random.Random(seed)
    width = hi - lo
    grid = 512
    pts = []
    for _ in range(count):
        i = rng.randrange(grid)
        j = rng.randrange(grid)
        while j == i:
            j = rng.randrange(grid)
        i, j = (i, j) if i < j else (j, i)
        pts.append((lo + width * i / grid, lo + width * j / grid))
    return PersistenceDiagram(tuple(pts))


def _perturbed(d: PersistenceDiagram, scale: Rational, grid: int,
               rng: random.Random) -> PersistenceDiagram:
    """Move births down and deaths up by random grid multiples below ``scale``.

    Growth-only moves preserve interval overlaps, hence connectivity.
    """
    pts = [
        (a - scale * rng.randrange(grid) / grid,
         b + scale * rng.randrange(grid) / grid)
        for a, b in d.points
    ]
    return PersistenceDiagram(tuple(pts))


def _chain_connected(d: PersistenceDiagram) -> bool:
    """Connectivity of the birth/death bipartite graph (generic input).

    Interval-overlap connectivity is not enough for reconstruction: a pair
    of nested intervals overlaps but contributes no crossing edge, so a
    diagram held together only by nesting splits into several bipartite
    components.  Reconstruction recovers one diagram per component, so the
    generator certifies this stronger property.
    """
    g = bipartite_graph(d)
    parent = {v: v for v in g.births | g.deaths}

    def find(v):
        while parent[v] is not v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(v) for v in parent}) <= 1


def random_independent_family(n: int, count: int, seed: int,
                              max_retries: int = 32
                              ) -> tuple[PersistenceDiagram, ...]:
    """Connected, arithmetically independent family of ``n`` diagrams.

    Each diagram starts from ``count`` random points in its own disjoint
    window (so critical sets cannot collide across diagrams), gains a
    connecting ladder, is made generic, and the whole family is then
    re-perturbed on successively finer grids until
    :func:`is_arithmetically_independent` certifies it.  The draw keeps
    every persistence above the ladder rung length so each point properly
    crosses a rung, which keeps the bipartite graph (not merely the
    interval-overlap graph) of every diagram connected; that too is
    certified before returning.  Exceeding the retry cap raises.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = random.Random(seed)
    # Windows of width 10 on a 512-step grid; persistences at least 128
    # steps (5/2).  connectify(eps=5/2) then uses rungs of width below 5/2,
    # so every point interval strictly crosses some rung.
    eps = Rational(5, 2)
    grid, min_steps = 512, 128
    family = []
    for i in range(n):
        lo = Rational(100 * i)
        sub = random.Random(rng.randrange(2 ** 32))
        pts = []
        for _ in range(count):
            a = sub.randrange(grid - min_steps)
            b = sub.randrange(a + min_steps, grid)
            pts.append((lo + Rational(10 * a, grid), lo + Rational(10 * b, grid)))
        base = PersistenceDiagram(tuple(pts))
        linked = connectify(base, eps)
        # Tiny perturbations only: base gaps are multiples of 10/(512*9) or
        # larger, so moves this small cannot reorder or un-cross intervals.
        family.append(make_generic(linked, Rational(1, 2000), rng.randrange(2 ** 32)))

    report = None
    for attempt in range(max_retries):
        report = is_arithmetically_independent(family)
        if (report and all(is_connected(d) for d in family)
                and all(_chain_connected(d) for d in family)):
            return tuple(family)
        family = [
            _perturbed(d, Rational(1, 4000 * 4 ** attempt), 1 << 40, rng)
            for d in family
        ]
    raise RuntimeError(
        f"failed to reach arithmetic independence after {max_retries} "
        f"perturbation rounds; last report: {report.detail if report else ''}")
