"""Acceptance suite: one test per criterion, exact tolerances, wall budgets.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one
``ACCEPTANCE <n> [PASS|FAIL]`` line per criterion.
"""

import math
import random
import time

import pytest
from gmpy2 import mpq

from plsc.analysis import (gram_matrix, inner_product, poisson_kernel,
                           poisson_weight, sup_distance)
from plsc.benchgen import (counterexample_pair, random_diagram,
                           random_independent_family)
from plsc.cli import dispatch
from plsc.diagram import (PersistenceDiagram, bottleneck_bruteforce,
                          bottleneck_distance, serialize_diagram)
from plsc.errors import PreconditionError
from plsc.landscape import (average_of, diagram_of, evaluate, landscape_of,
                            serialize_landscape)
from plsc.reconstruct import is_arithmetically_independent
from plsc.tropical import lambda_kt


def report(num, name, ok, elapsed, budget):
    status = "PASS" if ok else "FAIL"
    print(f"\nACCEPTANCE {num:2d} [{status}] {name} ({elapsed:.2f}s / budget {budget:.0f}s)")
    assert ok, f"criterion {num} failed: {name}"
    assert elapsed < budget, f"criterion {num} exceeded its {budget:.0f}s budget"


def test_criterion_1_figure_pair():
    t0 = time.monotonic()
    d1, d2 = counterexample_pair(4)
    ok = (sup_distance(landscape_of(d1), landscape_of(d2)) == 1
          and bottleneck_distance(d1, d2) == 9)
    report(1, "counterexample_pair(4): sup distance 1, bottleneck 9",
           ok, time.monotonic() - t0, 1.0)


def test_criterion_2_scaling_family():
    t0 = time.monotonic()
    ok = True
    for n in range(1, 51):
        d1, d2 = counterexample_pair(n)
        ok = ok and bottleneck_distance(d1, d2) == 2 * n + 1
        ok = ok and sup_distance(landscape_of(d1), landscape_of(d2)) == 1
        if not ok:
            break
    report(2, "n=1..50: bottleneck 2n+1 and sup distance 1, exact",
           ok, time.monotonic() - t0, 30.0)


def test_criterion_3_inversion_round_trip():
    t0 = time.monotonic()
    rng = random.Random(303)
    ok = True
    for i in range(200):
        count = rng.randrange(0, 51)
        d = random_diagram(count, 0, 25, seed=30_000 + i)
        ok = ok and diagram_of(landscape_of(d)) == d
        if not ok:
            break
    report(3, "200 random diagrams (<=50 points): diagram_of(landscape_of(D)) == D",
           ok, time.monotonic() - t0, 60.0)


def test_criterion_4_stability():
    t0 = time.monotonic()
    rng = random.Random(404)
    ok = True
    for i in range(100):
        d1 = random_diagram(rng.randrange(0, 13), 0, 12, seed=40_000 + i)
        d2 = random_diagram(rng.randrange(0, 13), 0, 12, seed=41_000 + i)
        bound = bottleneck_distance(d1, d2)
        l1, l2 = landscape_of(d1), landscape_of(d2)
        xs = sorted({t for f in (list(l1.levels) + list(l2.levels))
                     for t, _ in f.breakpoints})
        probes = xs + [(a + b) / 2 for a, b in zip(xs, xs[1:])]
        for k in range(1, max(l1.depth, l2.depth) + 1):
            f1, f2 = l1.level(k), l2.level(k)
            if any(abs(f1.value(t) - f2.value(t)) > bound for t in probes):
                ok = False
                break
        if not ok:
            break
    report(4, "100 random pairs: |lambda_k(t) - lambda'_k(t)| <= bottleneck, exact",
           ok, time.monotonic() - t0, 60.0)


def test_criterion_5_bottleneck_oracle():
    t0 = time.monotonic()
    rng = random.Random(505)
    ok = True
    for i in range(200):
        d1 = random_diagram(rng.randrange(0, 7), -10, 10, seed=50_000 + i)
        d2 = random_diagram(rng.randrange(0, 7), -10, 10, seed=51_000 + i)
        ok = ok and bottleneck_distance(d1, d2) == bottleneck_bruteforce(d1, d2)
        if not ok:
            break
    report(5, "200 random pairs (<=6 points): matching equals exhaustive oracle",
           ok, time.monotonic() - t0, 30.0)


def test_criterion_6_tropical_equivalence():
    t0 = time.monotonic()
    rng = random.Random(606)
    ok = True
    for i in range(100):
        count = rng.randrange(0, 31)
        d = random_diagram(count, 0, 20, seed=60_000 + i)
        L = landscape_of(d)
        for _ in range(100):
            t = mpq(rng.randrange(-40, 440), 16)
            for k in range(1, len(d) + 3):
                v = lambda_kt(k, t, d)
                got = mpq(0) if v.is_minus_inf else v.value
                if got != evaluate(L, k, t):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
    report(6, "100 random diagrams (<=30 pts), k<=|d|+2, 100 t: tropical == landscape",
           ok, time.monotonic() - t0, 60.0)


def test_criterion_7_reconstruction_round_trip(tmp_path):
    t0 = time.monotonic()
    rng = random.Random(707)
    ok = True
    for i in range(50):
        n = 1 + rng.randrange(5)
        count = 1 + rng.randrange(12)
        family = random_independent_family(n, count, seed=70_000 + i)
        from plsc.reconstruct import reconstruct_from_average
        recovered = reconstruct_from_average(
            average_of([landscape_of(d) for d in family]))
        ok = ok and set(recovered) == set(family)
        if not ok:
            break

    # the ambiguous average must be rejected as a precondition violation,
    # both in the library and as CLI exit status 2
    ambiguous = average_of([landscape_of(PersistenceDiagram(((0, 2),))),
                            landscape_of(PersistenceDiagram(((4, 6),)))])
    try:
        from plsc.reconstruct import reconstruct_from_average
        reconstruct_from_average(ambiguous)
        ok = False
    except PreconditionError:
        pass
    avg_file = tmp_path / "ambiguous.lsc"
    avg_file.write_text(serialize_landscape(ambiguous))
    ok = ok and dispatch(["reconstruct", str(avg_file),
                          "--outdir", str(tmp_path / "out")]) == 2

    report(7, "50 random independent families reconstruct exactly; "
              "ambiguous average rejected", ok, time.monotonic() - t0, 120.0)


def test_criterion_8_independence_examples():
    t0 = time.monotonic()

    def d(*pts):
        return PersistenceDiagram(tuple(pts))

    negatives = [
        ([d((0, 1), (1, 2))], 1, "1 appears twice"),
        ([d((0, 2)), d((1, 5))], 2, "share 1"),
        ([d((0, 1)), d((2, 4))], 3, "(0, 1, 2)"),
        ([d((0, 8)), d((11, 13))], 3, "(4, 8, 12)"),
    ]
    ok = True
    for family, condition, witness in negatives:
        rep = is_arithmetically_independent(family)
        ok = ok and not rep and rep.condition == condition and witness in rep.detail

    positives = [
        [d(("0", "1.1"), ("1.01", "2.001"))],
        [d(("0", "2.1")), d(("1.01", "5.001"))],
        [d(("0", "1.1")), d(("2.01", "4.001"))],
        [d(("0", "8.1")), d(("11.01", "13.001"))],
    ]
    for family in positives:
        ok = ok and bool(is_arithmetically_independent(family))

    report(8, "independence counterexamples report cited witnesses; "
              "perturbed versions pass", ok, time.monotonic() - t0, 10.0)


def test_criterion_9_kernel_numerics():
    t0 = time.monotonic()
    from scipy.integrate import quad
    import numpy as np

    unit = landscape_of(PersistenceDiagram(((0, 2),)))
    ok = inner_product(unit, unit) == mpq(2, 3)

    # quadrature oracle on a random landscape's squared 2-norm
    d = random_diagram(6, 0, 8, seed=90_001)
    L = landscape_of(d)
    exact = float(inner_product(L, L))
    numeric = 0.0
    for f in L.levels:
        xs = [float(t) for t, _ in f.breakpoints]
        vs = [float(v) for _, v in f.breakpoints]
        val, _ = quad(lambda t: float(np.interp(t, xs, vs)) ** 2,
                      xs[0], xs[-1], points=xs, limit=300)
        numeric += val
    ok = ok and abs(exact - numeric) <= 1e-9 * max(1.0, abs(exact))

    family = [random_diagram(4, 0, 10, seed=92_000 + i) for i in range(5)]
    G = [[float(v) for v in row] for row in gram_matrix(family)]
    rng = random.Random(909)
    for _ in range(100):
        vec = [mpq(rng.randrange(-12, 13), 4) for _ in range(5)]
        q = sum(float(vec[i] * vec[j]) * G[i][j]
                for i in range(5) for j in range(5))
        ok = ok and q >= -1e-9
    report(9, "inner product 2/3 exact; quadrature within 1e-9; Gram PSD probes",
           ok, time.monotonic() - t0, 30.0)


def test_criterion_10_poisson_family():
    t0 = time.monotonic()
    ok = True
    for nu in (0.5, 1.0, 1.5, 2.5, 3.7):
        masses = [poisson_weight(nu, k - 1) for k in range(1, 60)]
        argmax = masses.index(max(masses)) + 1
        ok = ok and argmax in {math.ceil(nu), math.floor(nu) + 1}
    unit = landscape_of(PersistenceDiagram(((0, 2),)))
    got = poisson_kernel(1.0, unit, unit)
    want = math.exp(-1) * (2 / 3)
    ok = ok and abs(got - want) <= 1e-12 * abs(want)
    report(10, "Poisson modes in {ceil(nu), floor(nu)+1}; kernel e^-1 * 2/3",
           ok, time.monotonic() - t0, 10.0)
