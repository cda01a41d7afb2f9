import math
import random
from fractions import Fraction

import pytest

from promwalk import (
    DimensionError,
    NonPositiveError,
    classify,
    convergence_bound,
    linear_extensions,
    mixing_time_bound,
    parse_poset,
    partition_factors,
    partition_function,
    probability_vector,
    promotion_graph,
    stationary_distribution,
    stationary_weight,
)
from corpus import random_class_poset, random_poset

BROKEN6 = parse_poset(6, [(1, 2), (2, 4), (3, 4), (4, 5), (4, 6)])
UNIFORM6 = [Fraction(1, 6)] * 6


def test_probability_vector():
    assert probability_vector(["1/2", "1/2"], 2) == (Fraction(1, 2), Fraction(1, 2))
    assert probability_vector([1, 3], 2, normalize=True) == (
        Fraction(1, 4),
        Fraction(3, 4),
    )
    with pytest.raises(DimensionError):
        probability_vector([1], 2)
    with pytest.raises(NonPositiveError):
        probability_vector([Fraction(1), Fraction(0)], 2, normalize=True)
    with pytest.raises(NonPositiveError):
        probability_vector([Fraction(1, 2), Fraction(1, 3)], 2)


def test_stationary_weight_frozen():
    assert stationary_weight(BROKEN6, (1, 2, 3, 4, 5, 6), UNIFORM6) == Fraction(324, 5)


def test_partition_factors_frozen():
    firsts, seconds = partition_factors(BROKEN6)
    assert [str(f) for f in firsts] == [
        "x1",
        "x1+x2",
        "x3",
        "x1+x2+x3+x4",
        "x1+x2+x3+x4+x5",
        "x1+x2+x3+x4+x6",
    ]
    assert [(str(a), str(b)) for a, b in seconds] == [
        ("x1+x2+x3+x4+x5+x6", "2x1+2x2+2x3+2x4+x5+x6")
    ]


def test_partition_function_frozen():
    assert partition_function(BROKEN6, UNIFORM6) == Fraction(5, 1944)


def test_stationary_distribution_broken6():
    report = stationary_distribution(BROKEN6, UNIFORM6)
    assert sum(report.weights.values()) == 1
    assert report.partition == Fraction(5, 1944)
    assert report.weights[(1, 2, 3, 4, 5, 6)] == Fraction(324, 5) * Fraction(5, 1944)


def is_invariant(p, x, weights):
    exts, edges = promotion_graph(p)
    lhs = {pi: Fraction(0) for pi in exts}
    for s, t, k in edges:
        lhs[exts[t]] += weights[exts[s]] * x[k - 1]
    return all(lhs[pi] == weights[pi] for pi in exts)


def test_invariance_class_and_general():
    rng = random.Random(13)
    for _ in range(8):
        p = random_class_poset(rng, rng.randint(1, 7), max_exts=60)
        x = probability_vector(
            [rng.randint(1, 9) for _ in range(p.n)], p.n, normalize=True
        )
        report = stationary_distribution(p, x)
        assert sum(report.weights.values()) == 1
        assert is_invariant(p, x, report.weights)
    for _ in range(8):
        p = random_poset(rng, rng.randint(1, 6))
        x = probability_vector(
            [rng.randint(1, 9) for _ in range(p.n)], p.n, normalize=True
        )
        report = stationary_distribution(p, x)
        assert sum(report.weights.values()) == 1
        assert is_invariant(p, x, report.weights)
        if classify(p).tag == "Other":
            assert report.partition == 1 / sum(
                stationary_weight(p, pi, x) for pi in linear_extensions(p)
            )


def test_convergence_bound():
    val, ok = convergence_bound(6, Fraction(1, 6), 10)
    assert (val, ok) == (1.0, False)
    val, ok = convergence_bound(6, Fraction(1, 6), 30)  # boundary k*p_x = n-1
    assert ok and val == 1.0
    val, ok = convergence_bound(6, Fraction(1, 6), 60)
    assert ok and math.isclose(val, math.exp(-1.25))
    prev = 1.0
    for k in range(30, 200, 10):
        val, ok = convergence_bound(6, Fraction(1, 6), k)
        assert ok and val <= prev + 1e-15
        prev = val


def test_mixing_time_bound():
    assert mixing_time_bound(6, Fraction(1, 6), 3) == 96
    with pytest.raises(NonPositiveError):
        mixing_time_bound(6, Fraction(1, 6), 0)
    for n, px, c in [(4, Fraction(1, 4), 1.0), (7, Fraction(1, 10), 2.5)]:
        k = math.ceil(mixing_time_bound(n, px, c))
        val, ok = convergence_bound(n, px, k)
        assert ok and val <= math.exp(-c) + 1e-12
