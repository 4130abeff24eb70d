import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings

from plsc.diagram import (EMPTY_DIAGRAM, PersistenceDiagram,
                          bottleneck_distance, is_generic, make_generic)
from plsc.errors import InputError, PreconditionError
from plsc.landscape import (EMPTY_LANDSCAPE, Landscape, PiecewiseLinearFunction,
                            ZERO_FUNCTION, average_of, critical_points,
                            diagram_of, evaluate, landscape_of,
                            linear_combination, parse_landscape, sample_grid,
                            serialize_landscape, tent)

from conftest import diagrams, rationals


def D(*pts):
    return PersistenceDiagram(tuple(pts))


def tent_value(point, t):
    a, b = point
    return max(mpq(0), min(t - a, b - t))


def kth_largest_tent(d, k, t):
    vals = sorted((tent_value(p, t) for p in d.points), reverse=True)
    return vals[k - 1] if k <= len(vals) else mpq(0)


class TestPiecewiseLinearFunction:
    def test_zero_function(self):
        assert ZERO_FUNCTION.value(17) == 0
        assert ZERO_FUNCTION.support is None

    def test_rejects_noncanonical(self):
        with pytest.raises(ValueError):
            PiecewiseLinearFunction(((0, 0), (1, 1), (2, 2), (3, 0)))  # collinear run
        with pytest.raises(ValueError):
            PiecewiseLinearFunction(((0, 0), (2, 0)))  # too few points
        with pytest.raises(ValueError):
            PiecewiseLinearFunction(((0, 0), (1, 1), (2, 2)))  # end not zero
        with pytest.raises(ValueError):
            PiecewiseLinearFunction(((0, 0), (1, -1), (2, 0)))  # negative
        with pytest.raises(ValueError):
            PiecewiseLinearFunction(((0, 0), (1, 1), (1, 1), (2, 0)))  # not increasing

    def test_from_samples_collapses_collinear(self):
        f = PiecewiseLinearFunction.from_samples(
            ((0, 0), (1, 1), (2, 2), (3, 1), (4, 0)))
        assert f.breakpoints == ((mpq(0), mpq(0)), (mpq(2), mpq(2)), (mpq(4), mpq(0)))

    def test_from_samples_trims_zero_tails(self):
        f = PiecewiseLinearFunction.from_samples(
            ((-2, 0), (-1, 0), (0, 0), (1, 1), (2, 0), (3, 0)))
        assert f.breakpoints[0] == (mpq(0), mpq(0))
        assert f.breakpoints[-1] == (mpq(2), mpq(0))

    def test_value_interpolates(self):
        f = tent(0, 2)
        assert f.value(mpq(1, 2)) == mpq(1, 2)
        assert f.value(-5) == 0 and f.value(5) == 0


class TestTent:
    def test_unit(self):
        assert tent(0, 2).breakpoints == ((mpq(0), mpq(0)), (mpq(1), mpq(1)),
                                          (mpq(2), mpq(0)))

    def test_translate(self):
        assert tent(1, 3).breakpoints == ((mpq(1), mpq(0)), (mpq(2), mpq(1)),
                                          (mpq(3), mpq(0)))

    def test_half_height(self):
        assert tent(0, 1).breakpoints == ((mpq(0), mpq(0)),
                                          (mpq(1, 2), mpq(1, 2)),
                                          (mpq(1), mpq(0)))

    def test_degenerate(self):
        with pytest.raises(ValueError):
            tent(2, 2)


class TestLandscapeOf:
    def test_single_tent(self):
        L = landscape_of(D((0, 2)))
        assert L.depth == 1
        assert L.levels[0] == tent(0, 2)

    def test_two_overlapping_tents(self):
        L = landscape_of(D((0, 2), (1, 3)))
        assert L.levels[0].breakpoints == (
            (mpq(0), mpq(0)), (mpq(1), mpq(1)), (mpq(3, 2), mpq(1, 2)),
            (mpq(2), mpq(1)), (mpq(3), mpq(0)))
        assert L.levels[1].breakpoints == (
            (mpq(1), mpq(0)), (mpq(3, 2), mpq(1, 2)), (mpq(2), mpq(0)))

    def test_empty(self):
        assert landscape_of(EMPTY_DIAGRAM) == EMPTY_LANDSCAPE

    def test_disjoint_tents_single_level(self):
        L = landscape_of(D((0, 2), (4, 6)))
        assert L.depth == 1
        assert L.levels[0].breakpoints == (
            (mpq(0), mpq(0)), (mpq(1), mpq(1)), (mpq(2), mpq(0)),
            (mpq(4), mpq(0)), (mpq(5), mpq(1)), (mpq(6), mpq(0)))

    @settings(max_examples=40, deadline=None)
    @given(diagrams(max_points=6))
    def test_matches_kmax_oracle(self, d):
        L = landscape_of(d)
        probes = set()
        for f in L.levels:
            xs = [t for t, _ in f.breakpoints]
            probes.update(xs)
            probes.update((x0 + x1) / 2 for x0, x1 in zip(xs, xs[1:]))
        for a, b in d.points:
            probes.update((a, b, (a + b) / 2, a - 1, b + 1))
        for t in probes:
            for k in range(1, len(d) + 2):
                assert evaluate(L, k, t) == kth_largest_tent(d, k, t)

    @settings(max_examples=40, deadline=None)
    @given(diagrams(max_points=6))
    def test_levels_monotone_and_slopes_unit(self, d):
        L = landscape_of(d)
        L.validate()
        for f in L.levels:
            assert all(s in (-1, 0, 1) for s in f.slopes())


class TestEvaluate:
    def test_peak(self):
        assert evaluate(landscape_of(D((0, 2))), 1, 1) == 1

    def test_depth_exceeded(self):
        assert evaluate(landscape_of(D((0, 2))), 2, 1) == 0

    def test_crossing_value(self):
        assert evaluate(landscape_of(D((0, 2), (1, 3))), 1, mpq(3, 2)) == mpq(1, 2)

    def test_bad_level(self):
        with pytest.raises(ValueError):
            evaluate(EMPTY_LANDSCAPE, 0, 0)


class TestCriticalPoints:
    def test_single_tent(self):
        assert critical_points(landscape_of(D((0, 2)))) == [0, 1, 2]

    def test_pair(self):
        assert critical_points(landscape_of(D((0, 2), (1, 3)))) == \
            [0, 1, mpq(3, 2), 2, 3]

    def test_empty(self):
        assert critical_points(EMPTY_LANDSCAPE) == []


class TestLinearCombination:
    def test_identity(self):
        L = landscape_of(D((0, 2), (1, 3)))
        assert linear_combination([(1, L)]) == L

    def test_disjoint_halves(self):
        L = linear_combination([
            (mpq(1, 2), landscape_of(D((0, 2)))),
            (mpq(1, 2), landscape_of(D((4, 6)))),
        ])
        assert L.depth == 1
        assert L.levels[0].value(1) == mpq(1, 2)
        assert L.levels[0].value(5) == mpq(1, 2)

    def test_union_additivity_of_disjoint_diagrams(self):
        lhs = linear_combination([
            (1, landscape_of(D((0, 2)))),
            (1, landscape_of(D((4, 6)))),
        ])
        assert lhs == landscape_of(D((0, 2), (4, 6)))

    def test_ambiguous_averages_coincide(self):
        avg1 = average_of([landscape_of(D((0, 2))), landscape_of(D((4, 6)))])
        avg2 = average_of([landscape_of(D((0, 2), (4, 6))),
                           landscape_of(EMPTY_DIAGRAM)])
        assert avg1 == avg2

    def test_negative_coefficient(self):
        with pytest.raises(ValueError):
            linear_combination([(-1, landscape_of(D((0, 2))))])

    def test_average_of_empty_family(self):
        with pytest.raises(ValueError):
            average_of([])

    @settings(max_examples=25, deadline=None)
    @given(diagrams(max_points=4), diagrams(max_points=4), rationals(0, 3),
           rationals(0, 3))
    def test_slope_bound(self, d1, d2, c1, c2):
        L = linear_combination([(c1, landscape_of(d1)), (c2, landscape_of(d2))])
        bound = c1 + c2
        for f in L.levels:
            assert all(-bound <= s <= bound for s in f.slopes())

    @settings(max_examples=25, deadline=None)
    @given(diagrams(max_points=4), diagrams(max_points=4))
    def test_pointwise_sum(self, d1, d2):
        l1, l2 = landscape_of(d1), landscape_of(d2)
        L = linear_combination([(mpq(2, 3), l1), (mpq(1, 3), l2)])
        probes = {t for f in (list(L.levels) + list(l1.levels) + list(l2.levels))
                  for t, _ in f.breakpoints}
        for t in probes:
            for k in range(1, L.depth + 2):
                expect = mpq(2, 3) * evaluate(l1, k, t) + mpq(1, 3) * evaluate(l2, k, t)
                assert evaluate(L, k, t) == expect


class TestInversion:
    def test_known_round_trips(self):
        for pts in [((0, 2), (1, 3)), ((0, 10), (4, 6))]:
            d = D(*pts)
            assert diagram_of(landscape_of(d)) == d

    def test_empty(self):
        assert diagram_of(EMPTY_LANDSCAPE) == EMPTY_DIAGRAM

    def test_duplicate_points(self):
        d = D((0, 2), (0, 2), (1, 4))
        assert diagram_of(landscape_of(d)) == d

    def test_rejects_bad_slope(self):
        steep = Landscape((PiecewiseLinearFunction(((0, 0), (1, 2), (2, 0))),))
        with pytest.raises(PreconditionError, match="slope"):
            diagram_of(steep)

    def test_rejects_non_diagram_landscape(self):
        trapezoid = Landscape((PiecewiseLinearFunction(
            ((0, 0), (mpq(1, 2), mpq(1, 2)), (mpq(3, 2), mpq(1, 2)), (2, 0))),))
        with pytest.raises(PreconditionError):
            diagram_of(trapezoid)

    @settings(max_examples=40, deadline=None)
    @given(diagrams(max_points=8))
    def test_round_trip_random(self, d):
        assert diagram_of(landscape_of(d)) == d


class TestSampleGrid:
    def test_single_level(self):
        assert sample_grid(landscape_of(D((0, 2))), 1, 0, 2, 2) == [[0, 1, 0]]

    def test_deep_level_is_zero(self):
        assert sample_grid(landscape_of(D((0, 2))), 2, 0, 2, 2) == \
            [[0, 1, 0], [0, 0, 0]]

    def test_bad_range(self):
        with pytest.raises(ValueError):
            sample_grid(landscape_of(D((0, 2))), 1, 2, 1, 4)


class TestStability:
    @settings(max_examples=25, deadline=None)
    @given(diagrams(max_points=5), diagrams(max_points=5))
    def test_sup_bound_by_bottleneck(self, d1, d2):
        l1, l2 = landscape_of(d1), landscape_of(d2)
        bound = bottleneck_distance(d1, d2)
        xs = sorted({t for f in (list(l1.levels) + list(l2.levels))
                     for t, _ in f.breakpoints})
        probes = xs + [(a + b) / 2 for a, b in zip(xs, xs[1:])]
        for k in range(1, max(l1.depth, l2.depth) + 1):
            for t in probes:
                assert abs(evaluate(l1, k, t) - evaluate(l2, k, t)) <= bound


class TestCriticalPointCharacterization:
    @settings(max_examples=30, deadline=None)
    @given(diagrams(max_points=6))
    def test_matches_labeled_critical_set(self, d):
        from plsc.reconstruct import critical_set
        d = make_generic(d, mpq(1, 13), seed=2)
        assert is_generic(d)
        assert set(critical_points(landscape_of(d))) == set(critical_set(d).points)


class TestSerialization:
    def test_header_required(self):
        with pytest.raises(InputError, match="PLSC"):
            parse_landscape("1: 0:0 1:1 2:0\n")

    def test_level_indices_checked(self):
        with pytest.raises(InputError, match="level 1"):
            parse_landscape("PLSC 1\n2: 0:0 1:1 2:0\n")

    def test_monotonicity_checked(self):
        text = "PLSC 1\n1: 0:0 1:1 2:0\n2: 0:0 1:2 2:0\n"
        with pytest.raises(InputError, match="ordering"):
            parse_landscape(text)

    def test_empty_landscape(self):
        assert parse_landscape(serialize_landscape(EMPTY_LANDSCAPE)) == EMPTY_LANDSCAPE

    @settings(max_examples=40, deadline=None)
    @given(diagrams(max_points=6))
    def test_round_trip(self, d):
        L = landscape_of(d)
        assert parse_landscape(serialize_landscape(L)) == L


def test_big_random_round_trip_suite():
    rng = random.Random(5)
    for _ in range(10):
        pts = []
        for _ in range(rng.randrange(0, 30)):
            a = mpq(rng.randrange(0, 200), 8)
            pts.append((a, a + mpq(rng.randrange(1, 80), 8)))
        d = D(*pts)
        assert diagram_of(landscape_of(d)) == d
