"""Exact piecewise-linear landscapes of persistence diagrams.

A landscape is a finite sequence of levels, each a compactly supported
nonnegative piecewise-linear function over exact rationals, pointwise
nonincreasing in the level index; level k is the pointwise k-th largest
of the tent functions of the diagram.  Construction, evaluation,
nonnegative linear combinations, critical points, grid sampling, the
text file format, and the exact inversion back to a diagram all live
here.

Functions are stored canonically (sorted breakpoints, zero ends, no
collinear triple), so structural equality of breakpoint tuples is
equality of functions.
"""

from __future__ import annotations

import heapq
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .diagram import EMPTY_DIAGRAM, PersistenceDiagram
from .errors import InputError, PreconditionError
from .rational import Rational, RationalLike, format_rational, parse_rational, to_rational

_ZERO = Rational(0)
_ONE = Rational(1)

Breakpoint = tuple[Rational, Rational]


def _collinear(p0: Breakpoint, p1: Breakpoint, p2: Breakpoint) -> bool:
    return (p1[1] - p0[1]) * (p2[0] - p1[0]) == (p2[1] - p1[1]) * (p1[0] - p0[0])


@dataclass(frozen=True)
class PiecewiseLinearFunction:
    """Continuous, compactly supported, nonnegative, canonical PL function.

    Linear interpolation between breakpoints, zero outside
    [first t, last t]; the empty breakpoint tuple is the zero function.
    The constructor validates canonical form; use :meth:`from_samples`
    to build one from raw samples.
    """

    breakpoints: tuple[Breakpoint, ...]

    def __post_init__(self) -> None:
        bps = tuple((to_rational(t), to_rational(v)) for t, v in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        if not bps:
            return
        if len(bps) < 3:
            raise ValueError("a nonzero function needs at least three breakpoints")
        for (t0, _), (t1, _) in zip(bps, bps[1:]):
            if not t0 < t1:
                raise ValueError(f"breakpoints not strictly increasing at t={t1}")
        if bps[0][1] != 0 or bps[-1][1] != 0:
            raise ValueError("first and last values must be zero (compact support)")
        if any(v < 0 for _, v in bps):
            raise ValueError("values must be nonnegative")
        for p0, p1, p2 in zip(bps, bps[1:], bps[2:]):
            if _collinear(p0, p1, p2):
                raise ValueError(f"redundant breakpoint at t={p1[0]}")

    @classmethod
    def from_samples(cls, samples: Iterable[Breakpoint]) -> "PiecewiseLinearFunction":
        """Canonicalize samples: trim zero tails, drop collinear interior points.

        Samples must have strictly increasing abscissae and value zero at
        both ends; consecutive samples are joined linearly.
        """
        pts = [(to_rational(t), to_rational(v)) for t, v in samples]
        support = [i for i, (_, v) in enumerate(pts) if v != 0]
        if not support:
            return ZERO_FUNCTION
        first, last = support[0], support[-1]
        if first == 0 or last == len(pts) - 1:
            raise ValueError("samples must begin and end at value zero")
        kept: list[Breakpoint] = [pts[first - 1]]
        for q in pts[first : last + 2]:
            if len(kept) >= 2 and _collinear(kept[-2], kept[-1], q):
                kept[-1] = q
            else:
                kept.append(q)
        return cls(tuple(kept))

    @cached_property
    def _xs(self) -> list[Rational]:
        return [t for t, _ in self.breakpoints]

    @cached_property
    def max_value(self) -> Rational:
        return max((v for _, v in self.breakpoints), default=_ZERO)

    @property
    def support(self) -> "tuple[Rational, Rational] | None":
        if not self.breakpoints:
            return None
        return (self.breakpoints[0][0], self.breakpoints[-1][0])

    def value(self, t: RationalLike) -> Rational:
        t = to_rational(t)
        bps = self.breakpoints
        if not bps or t < bps[0][0] or t > bps[-1][0]:
            return _ZERO
        i = bisect_right(self._xs, t) - 1
        t0, v0 = bps[i]
        if t == t0:
            return v0
        t1, v1 = bps[i + 1]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    def slopes(self) -> list[Rational]:
        """Per-segment slopes, left to right (zero outside the support)."""
        bps = self.breakpoints
        return [(v1 - v0) / (t1 - t0) for (t0, v0), (t1, v1) in zip(bps, bps[1:])]

    def scaled(self, c: RationalLike) -> "PiecewiseLinearFunction":
        c = to_rational(c)
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        if c == 0 or not self.breakpoints:
            return ZERO_FUNCTION
        return PiecewiseLinearFunction(tuple((t, c * v) for t, v in self.breakpoints))


ZERO_FUNCTION = PiecewiseLinearFunction(())


@dataclass(frozen=True)
class Landscape:
    """Levels λ_1, λ_2, ... (1-indexed); λ_k is zero past the stored depth.

    Stored levels are nonzero; since levels are pointwise nonincreasing,
    the first zero level would end the sequence anyway.  Cross-level
    ordering is guaranteed by the constructors in this module and checked
    by :meth:`validate` (used on parsed input and in tests, not on every
    construction).
    """

    levels: tuple[PiecewiseLinearFunction, ...]

    def __post_init__(self) -> None:
        levels = tuple(self.levels)
        object.__setattr__(self, "levels", levels)
        for f in levels:
            if not isinstance(f, PiecewiseLinearFunction):
                raise TypeError("levels must be PiecewiseLinearFunction values")
            if not f.breakpoints:
                raise ValueError("zero levels are implicit; do not store them")

    @property
    def depth(self) -> int:
        return len(self.levels)

    def level(self, k: int) -> PiecewiseLinearFunction:
        """The k-th level (1-indexed); the zero function past the depth."""
        if k < 1:
            raise ValueError("level index starts at 1")
        return self.levels[k - 1] if k <= len(self.levels) else ZERO_FUNCTION

    def validate(self) -> None:
        """Check λ_k ≥ λ_{k+1} at all breakpoints and midpoints between them."""
        for upper, lower in zip(self.levels, self.levels[1:]):
            xs = sorted({t for t, _ in upper.breakpoints}
                        | {t for t, _ in lower.breakpoints})
            probes = xs + [(x0 + x1) / 2 for x0, x1 in zip(xs, xs[1:])]
            for t in probes:
                if upper.value(t) < lower.value(t):
                    raise ValueError(f"level ordering violated at t={format_rational(t)}")


EMPTY_LANDSCAPE = Landscape(())


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def tent(a: RationalLike, b: RationalLike) -> PiecewiseLinearFunction:
    """Triangle of the point (a, b): peak at the midpoint, height (b-a)/2."""
    a, b = to_rational(a), to_rational(b)
    if not a < b:
        raise ValueError(f"tent requires a < b, got ({a}, {b})")
    return PiecewiseLinearFunction(((a, _ZERO), ((a + b) / 2, (b - a) / 2), (b, _ZERO)))


def landscape_of(d: PersistenceDiagram) -> Landscape:
    """Exact landscape of a diagram.

    Sweeps the sorted union of all tent corners and all crossings of an
    ascending with a descending tent segment; between consecutive events
    every tent value is linear and their sorted order is constant, so the
    k-th largest value interpolates exactly from its event samples.
    """
    pts = d.points
    n = len(pts)
    if n == 0:
        return EMPTY_LANDSCAPE
    tents = [(a, (a + b) / 2, b) for a, b in pts]

    events = set()
    for a, m, b in tents:
        events.update((a, m, b))
    for ai, mi, bi in tents:
        for aj, mj, bj in tents:
            t = (ai + bj) / 2  # ascending side of i meets descending side of j
            if ai < t <= mi and mj <= t < bj:
                events.add(t)
    xs = sorted(events)

    # Sweep left to right keeping the tents whose support contains t.
    by_birth = sorted(tents)
    active: list[tuple[Rational, Rational, Rational]] = []  # heap keyed on death
    columns: list[list[Rational]] = []
    next_in = 0
    for t in xs:
        while next_in < n and by_birth[next_in][0] < t:
            a, m, b = by_birth[next_in]
            heapq.heappush(active, (b, a, m))
            next_in += 1
        while active and active[0][0] <= t:
            heapq.heappop(active)
        vals = sorted(
            ((t - a) if t <= m else (b - t) for b, a, m in active),
            reverse=True,
        )
        columns.append(vals)

    depth = max(len(c) for c in columns)
    levels = []
    for k in range(depth):
        samples = [
            (xs[i], columns[i][k] if k < len(columns[i]) else _ZERO)
            for i in range(len(xs))
        ]
        f = PiecewiseLinearFunction.from_samples(samples)
        if not f.breakpoints:
            break
        levels.append(f)
    return Landscape(tuple(levels))


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------

def evaluate(l: Landscape, k: int, t: RationalLike) -> Rational:
    """λ_k(t); zero when k exceeds the depth or t is outside the support."""
    return l.level(k).value(t)


def critical_points(l: Landscape) -> list[Rational]:
    """Sorted abscissae where some level changes slope (zero outside support)."""
    crit = set()
    for f in l.levels:
        bps = f.breakpoints
        slopes = f.slopes()
        for i, (t, _) in enumerate(bps):
            left = slopes[i - 1] if i > 0 else _ZERO
            right = slopes[i] if i < len(slopes) else _ZERO
            if left != right:
                crit.add(t)
    return sorted(crit)


def sample_grid(l: Landscape, k_max: int, t_min: RationalLike, t_max: RationalLike,
                steps: int) -> list[list[Rational]]:
    """(k_max x steps+1) matrix of λ_k over a uniform grid on [t_min, t_max]."""
    t_min, t_max = to_rational(t_min), to_rational(t_max)
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if not t_min < t_max:
        raise ValueError(f"bad range: t_min={t_min} must be below t_max={t_max}")
    step = (t_max - t_min) / steps
    return [
        [evaluate(l, k, t_min + i * step) for i in range(steps + 1)]
        for k in range(1, k_max + 1)
    ]


# ---------------------------------------------------------------------------
# vector-space structure (nonnegative cone)
# ---------------------------------------------------------------------------

def linear_combination(
    terms: Sequence[tuple[RationalLike, Landscape]],
) -> Landscape:
    """Levelwise Σ c_i λ⁽ⁱ⁾ with c_i ≥ 0, exact over the merged breakpoints."""
    scaled = [(to_rational(c), l) for c, l in terms]
    for c, _ in scaled:
        if c < 0:
            raise ValueError("coefficients must be nonnegative")
    depth = max((l.depth for c, l in scaled if c != 0), default=0)
    levels = []
    for k in range(1, depth + 1):
        parts = [(c, l.level(k)) for c, l in scaled
                 if c != 0 and l.depth >= k]
        xs = sorted({t for _, f in parts for t, _ in f.breakpoints})
        if not xs:
            break
        samples = [(t, sum((c * f.value(t) for c, f in parts), _ZERO)) for t in xs]
        g = PiecewiseLinearFunction.from_samples(samples)
        if not g.breakpoints:
            break
        levels.append(g)
    return Landscape(tuple(levels))


def average_of(landscapes: Sequence[Landscape]) -> Landscape:
    """Levelwise arithmetic mean of a nonempty family."""
    if not landscapes:
        raise ValueError("cannot average an empty family")
    w = Rational(1, len(landscapes))
    return linear_combination([(w, l) for l in landscapes])


# ---------------------------------------------------------------------------
# inversion
# ---------------------------------------------------------------------------

def diagram_of(l: Landscape) -> PersistenceDiagram:
    """Recover the unique diagram whose landscape is ``l``.

    The rank of a candidate (x, y), x < y — the number of diagram points
    with birth <= x and death >= y — equals the number of levels whose
    value at the midpoint (x+y)/2 is at least the half-width (y-x)/2.
    Every diagram point's tent peak survives as a 'peak' breakpoint
    (slope +1 then -1) of some level, so those corners enumerate all
    candidates; multiplicities follow by inclusion-exclusion of ranks at
    half-gap offsets.  The result is verified by recomputing its
    landscape; any failure means ``l`` is not the landscape of a diagram.
    """
    if not l.levels:
        return EMPTY_DIAGRAM

    slope_lists = []
    for f in l.levels:
        ss = f.slopes()
        if any(s not in (-1, 0, 1) for s in ss):
            raise PreconditionError(
                "level slope outside {-1, 0, 1}: not the landscape of a diagram")
        slope_lists.append(ss)

    grid = sorted({t - v for f in l.levels for t, v in f.breakpoints}
                  | {t + v for f in l.levels for t, v in f.breakpoints})
    delta = min(b - a for a, b in zip(grid, grid[1:])) / 2

    candidates = set()
    for f, ss in zip(l.levels, slope_lists):
        bps = f.breakpoints
        for i in range(1, len(bps) - 1):
            if ss[i - 1] == 1 and ss[i] == -1:
                t, v = bps[i]
                candidates.add((t - v, t + v))

    levels = l.levels

    def rank(x: Rational, y: Rational) -> int:
        m = (x + y) / 2
        h = (y - x) / 2
        lo, hi = 0, len(levels)  # λ_k(m) is nonincreasing in k
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if levels[mid - 1].value(m) >= h:
                lo = mid
            else:
                hi = mid - 1
        return lo

    pts: list[tuple[Rational, Rational]] = []
    for x, y in sorted(candidates):
        mult = (rank(x, y) - rank(x - delta, y)
                - rank(x, y + delta) + rank(x - delta, y + delta))
        if mult < 0:
            raise PreconditionError(
                "negative multiplicity: not the landscape of a diagram")
        pts.extend([(x, y)] * mult)

    result = PersistenceDiagram(tuple(pts))
    if landscape_of(result) != l:
        raise PreconditionError(
            "round-trip verification failed: not the landscape of a diagram")
    return result


# ---------------------------------------------------------------------------
# file format: header line `PLSC 1`, then `k: t1:v1 t2:v2 ...` per level
# ---------------------------------------------------------------------------

def serialize_landscape(l: Landscape) -> str:
    lines = ["PLSC 1"]
    for k, f in enumerate(l.levels, start=1):
        pairs = " ".join(f"{format_rational(t)}:{format_rational(v)}"
                         for t, v in f.breakpoints)
        lines.append(f"{k}: {pairs}")
    return "\n".join(lines) + "\n"


def parse_landscape(text: str) -> Landscape:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "PLSC 1":
        raise InputError("line 1: expected header 'PLSC 1'")
    levels = []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        try:
            k = int(head)
        except ValueError:
            raise InputError(f"line {lineno}: expected 'k: ...', got {raw!r}") from None
        if k != len(levels) + 1:
            raise InputError(f"line {lineno}: expected level {len(levels) + 1}, got {k}")
        bps = []
        for token in rest.split():
            t_txt, sep, v_txt = token.partition(":")
            if not sep:
                raise InputError(f"line {lineno}: malformed breakpoint {token!r}")
            try:
                bps.append((parse_rational(t_txt), parse_rational(v_txt)))
            except ValueError as exc:
                raise InputError(f"line {lineno}: {exc}") from None
        try:
            levels.append(PiecewiseLinearFunction(tuple(bps)))
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    landscape = Landscape(tuple(levels))
    try:
        landscape.validate()
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return landscape
