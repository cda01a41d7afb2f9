import random
from fractions import Fraction
from itertools import permutations

import pytest

from promwalk import (
    ClassError,
    EigenvalueMultiset,
    LabelingError,
    LinearForm,
    PairError,
    Poset,
    UpsetPropertyError,
    ak_a2_minus_edge_spectrum,
    break_cover,
    break_edge_spectrum,
    chain_completion,
    chain_union_spectrum,
    check_upset_property,
    classify,
    count_linear_extensions,
    forest_ladder_spectrum,
    forest_spectrum,
    kron_assemble,
    ladder_eigensystem,
    ladder_levels,
    parse_form,
    parse_poset,
)
from corpus import random_class_poset, random_rooted_forest

BROKEN6 = parse_poset(6, [(1, 2), (2, 4), (3, 4), (4, 5), (4, 6)])
FOREST = parse_poset(6, [(1, 2), (2, 4), (3, 4), (4, 5), (5, 6)])
LADDER4 = parse_poset(4, [(1, 3), (1, 4), (2, 3), (2, 4)])


def multiset(n, pairs):
    out = EigenvalueMultiset(n)
    for text, mult in pairs:
        out.add(parse_form(text, n), mult)
    return out


def test_forest_spectrum_frozen():
    assert forest_spectrum(FOREST) == multiset(
        6,
        [
            ("x4+x5+x6", 1),
            ("x2+x4+x5+x6", 1),
            ("x1+x2+x3+x4+x5+x6", 1),
        ],
    )
    with pytest.raises(ClassError):
        forest_spectrum(BROKEN6)


def test_break_once_frozen():
    # removing (5,6) from the forest splits each eigenvalue in two
    spec = break_edge_spectrum(forest_spectrum(FOREST), FOREST, (5, 6))
    assert spec == multiset(
        6,
        [
            ("x4+x5+x6", 1),
            ("-x4", 1),
            ("x2+x4+x5+x6", 1),
            ("-x2-x4", 1),
            ("x1+x2+x3+x4+x5+x6", 1),
            ("-x1-x2-x3-x4", 1),
        ],
    )
    assert forest_ladder_spectrum(BROKEN6) == spec


def test_break_other_edge_frozen():
    # removing (4,5) instead exercises the "x_b present, x_a absent" rule
    spec = break_edge_spectrum(forest_spectrum(FOREST), FOREST, (4, 5))
    assert spec == multiset(
        6,
        [
            ("x4+x5+x6", 1),
            ("x6", 1),
            ("x2+x4+x5+x6", 1),
            ("-x2+x6", 1),
            ("x1+x2+x3+x4+x5+x6", 1),
            ("-x1-x2-x3+x6", 1),
        ],
    )
    assert forest_ladder_spectrum(break_cover(FOREST, (4, 5))) == spec


def test_chain_plus_point_frozen():
    # chain 1<2<3<4 together with the isolated point 5
    p = parse_poset(5, [(1, 2), (2, 3), (3, 4)])
    base = multiset(
        5,
        [
            ("0", 1),
            ("x4", 1),
            ("x3+x4", 1),
            ("x2+x3+x4", 1),
            ("x1+x2+x3+x4+x5", 1),
        ],
    )
    assert chain_union_spectrum(p) == base
    broken = break_edge_spectrum(base, p, (2, 3))
    assert broken == multiset(
        5,
        [
            ("0", 2),
            ("x4", 3),
            ("x3+x4", 1),
            ("x2+x4", 1),
            ("x2+x3+x4", 1),
            ("x1+x2+x3+x4+x5", 1),
            ("-x1+x4+x5", 1),
        ],
    )
    assert forest_ladder_spectrum(break_cover(p, (2, 3))) == broken


def test_chain_union_labeling():
    with pytest.raises(LabelingError):
        chain_union_spectrum(parse_poset(3, [(1, 3)]))
    with pytest.raises(ClassError):
        chain_union_spectrum(BROKEN6)
    # antichain: x_S over all subsets is wrong; only upsets = all subsets here
    anti = Poset(3, [])
    spec = chain_union_spectrum(anti)
    assert spec.total() == 6
    assert spec.entries[LinearForm.zero(3)] == 2


def test_ladder_values_frozen():
    assert ladder_levels(LADDER4) == ((1, 2), (3, 4))
    pairs = ladder_eigensystem(LADDER4)
    values = sorted(str(p.value) for p in pairs)
    assert values == sorted(["x1+x2+x3+x4", "0", "x3+x4", "-x1-x2"])
    spec = forest_ladder_spectrum(LADDER4)
    assert spec == multiset(
        4, [("x1+x2+x3+x4", 1), ("0", 1), ("x3+x4", 1), ("-x1-x2", 1)]
    )
    with pytest.raises(ClassError):
        ladder_levels(BROKEN6)


def test_ladder_eigenvectors_satisfy_identity():
    rng = random.Random(23)
    ladders = [LADDER4, parse_poset(3, [(1, 2), (1, 3)])]
    for _ in range(5):
        n = rng.randint(2, 6)
        levels, used = [], 0
        while used < n:
            w = min(rng.choice((1, 2)), n - used)
            levels.append(tuple(range(used + 1, used + 1 + w)))
            used += w
        covers = [
            (a, b)
            for lo, hi in zip(levels, levels[1:])
            for a in lo
            for b in hi
        ]
        ladders.append(parse_poset(n, covers))
    for p in ladders:
        levels = ladder_levels(p)
        m = kron_assemble(levels, p.n)
        denom = 3 * p.n * (p.n + 1)
        x = [Fraction(2 * k + 1, denom) for k in range(p.n)]
        x[-1] += 1 - sum(x)
        mx = [[m[i, j].evaluate(x) for j in range(m.dim)] for i in range(m.dim)]
        for pair in ladder_eigensystem(p):
            c = pair.value.evaluate(x)
            v = [poly.evaluate(x) for poly in pair.vector]
            assert any(entry != 0 for entry in v)
            for i in range(m.dim):
                assert sum(mx[i][j] * v[j] for j in range(m.dim)) == c * v[i]


def test_ak_a2_frozen():
    assert ak_a2_minus_edge_spectrum(1) == multiset(
        3, [("x3", 1), ("x1+x2+x3", 1), ("0", 1)]
    )
    assert ak_a2_minus_edge_spectrum(2) == multiset(
        4,
        [
            ("x4", 1),
            ("x3+x4", 1),
            ("x1+x2+x3+x4", 1),
            ("0", 1),
            ("-x1", 1),
        ],
    )
    for k in range(1, 6):
        p = parse_poset(
            k + 2,
            [(i, k + 1) for i in range(1, k)]
            + [(i, k + 2) for i in range(1, k + 1)],
        )
        assert ak_a2_minus_edge_spectrum(k).total() == count_linear_extensions(p)


def test_upset_property_checks():
    ok = forest_spectrum(FOREST)
    assert check_upset_property(ok, FOREST) == []
    bad_a = EigenvalueMultiset(6, {parse_form("x5", 6): 1})
    assert check_upset_property(bad_a, FOREST) == [
        (parse_form("x5", 6), (5, 6), "a")
    ]
    with pytest.raises(UpsetPropertyError):
        break_edge_spectrum(bad_a, FOREST, (5, 6))
    bad_b = EigenvalueMultiset(6, {parse_form("x1+x6", 6): 1})
    assert (parse_form("x1+x6", 6), (5, 6), "b") in check_upset_property(
        bad_b, FOREST
    )
    with pytest.raises(PairError):
        break_edge_spectrum(ok, FOREST, (1, 2))


def test_pipeline_rejects_outside_class():
    with pytest.raises(ClassError):
        forest_ladder_spectrum(parse_poset(4, [(1, 3), (2, 3), (2, 4)]))


def test_engine_agreement_and_invariants():
    rng = random.Random(31)
    for _ in range(25):
        p = random_class_poset(rng, rng.randint(1, 8), max_exts=200)
        spec = forest_ladder_spectrum(p)
        assert spec.total() == count_linear_extensions(p)
        for form in spec.entries:
            assert set(form.coeffs) <= {-1, 0, 1}
        assert check_upset_property(spec, p) == []
    for _ in range(10):
        f = random_rooted_forest(rng, rng.randint(1, 8), max_exts=200)
        assert forest_ladder_spectrum(f) == forest_spectrum(f)
    # the two closed forms agree on consecutively labeled chain unions
    for sizes in ([3], [2, 2], [1, 3, 1], [4, 2]):
        covers, start = [], 1
        for s in sizes:
            covers += [(i, i + 1) for i in range(start, start + s - 1)]
            start += s
        p = parse_poset(sum(sizes), covers)
        assert chain_union_spectrum(p) == forest_spectrum(p)


def test_break_order_invariance():
    rng = random.Random(41)
    checked = 0
    while checked < 12:
        p = random_class_poset(rng, rng.randint(4, 8), max_exts=200, min_breaks=2)
        completed, breaks = chain_completion(p)
        if len(breaks) < 2:
            continue
        checked += 1
        reference = forest_ladder_spectrum(p)
        base = forest_spectrum(completed)
        for order in list(permutations(breaks))[:24]:
            spec = base
            cur = completed
            for pair in order:
                spec = break_edge_spectrum(spec, cur, pair)
                cur = break_cover(cur, pair)
            assert spec == reference
