import random
from fractions import Fraction

import pytest

from promwalk import (
    DimensionError,
    LinearForm,
    NonPositiveError,
    PairError,
    Poset,
    SymbolicMatrix,
    evaluate,
    expand_ab,
    kron_assemble,
    parse_form,
    parse_poset,
    transition_matrix,
)

BROKEN6 = parse_poset(6, [(1, 2), (2, 4), (3, 4), (4, 5), (4, 6)])
FOREST = parse_poset(6, [(1, 2), (2, 4), (3, 4), (4, 5), (5, 6)])
LADDER4 = parse_poset(4, [(1, 3), (1, 4), (2, 3), (2, 4)])

# 6x6 transition matrix of BROKEN6 in the lexicographic basis, frozen
BROKEN6_MATRIX = [
    ["x6", "x3+x4+x5", "0", "x1+x2", "0", "0"],
    ["x3+x4+x6", "x5", "x1+x2", "0", "0", "0"],
    ["0", "x3", "x6", "x2+x4+x5", "0", "x1"],
    ["x3", "0", "x2+x4+x6", "x5", "x1", "0"],
    ["0", "x3", "0", "0", "x6", "x1+x2+x4+x5"],
    ["x3", "0", "0", "0", "x1+x2+x4+x6", "x5"],
]

# 3x3 transition matrix of the forest, basis {123456, 132456, 312456}, frozen
FOREST_MATRIX = [
    ["x3+x4+x5+x6", "x1+x2", "0"],
    ["x3", "x2+x4+x5+x6", "x1"],
    ["x3", "0", "x1+x2+x4+x5+x6"],
]


def grid(p_n, rows):
    return [[parse_form(s, p_n) for s in row] for row in rows]


def test_transition_matrix_broken6():
    m = transition_matrix(BROKEN6)
    assert [[str(f) for f in row] for row in m.entries] == BROKEN6_MATRIX


def test_transition_matrix_forest():
    m = transition_matrix(FOREST)
    assert [[str(f) for f in row] for row in m.entries] == FOREST_MATRIX


def test_single_element():
    m = transition_matrix(Poset(1, []))
    assert m.dim == 1 and str(m[0, 0]) == "x1"


def test_row_sums():
    for p in (BROKEN6, FOREST, LADDER4):
        m = transition_matrix(p)
        assert all(s == LinearForm.full(p.n) for s in m.row_sums())


def test_evaluate():
    m = transition_matrix(BROKEN6)
    x = [Fraction(1, 6)] * 6
    rm = evaluate(m, x)
    for i in range(6):
        assert sum(rm[i, j] for j in range(6)) == 1
    with pytest.raises(DimensionError):
        evaluate(m, [Fraction(1, 2)] * 5)
    with pytest.raises(NonPositiveError):
        evaluate(m, [Fraction(1)] * 5 + [Fraction(0)])


def align(a: SymbolicMatrix, b: SymbolicMatrix) -> bool:
    """Entrywise equality of b against a after mapping b's basis into a's."""
    idx = {w: i for i, w in enumerate(a.basis)}
    perm = [idx[w] for w in b.basis]
    return all(
        b[i, j] == a[perm[i], perm[j]]
        for i in range(a.dim)
        for j in range(a.dim)
    )


def test_kron_assemble_matches_transition():
    from promwalk import classify

    ka = kron_assemble(classify(LADDER4).levels, 4)
    assert align(transition_matrix(LADDER4), ka)
    # one singleton level
    ka1 = kron_assemble([(1,)], 1)
    assert ka1.dim == 1 and str(ka1[0, 0]) == "x1"
    # appending a singleton on top adds x_a * I
    top = parse_poset(5, [(1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)])
    m5 = kron_assemble([(1, 2), (3, 4), (5,)], 5)
    m4 = kron_assemble([(1, 2), (3, 4)], 5)
    for i in range(4):
        for j in range(4):
            expected = m4[i, j] + (LinearForm.unit(5, 5) if i == j else LinearForm.zero(5))
            assert m5[i, j] == expected
    assert align(transition_matrix(top), m5)


def test_expand_ab_reproduces_broken_matrix():
    m = transition_matrix(FOREST)
    big = expand_ab(m, FOREST, (5, 6))
    assert [[str(f) for f in row] for row in big.entries] == BROKEN6_MATRIX
    assert list(big.basis) == list(transition_matrix(BROKEN6).basis)
    assert all(s == LinearForm.full(6) for s in big.row_sums())


def test_expand_ab_smallest():
    chain = parse_poset(2, [(1, 2)])
    m = transition_matrix(chain)
    big = expand_ab(m, chain, (1, 2))
    assert [[str(f) for f in row] for row in big.entries] == [
        ["x2", "x1"],
        ["x2", "x1"],
    ]
    assert align(transition_matrix(Poset(2, [])), big)


def test_expand_ab_zero_blocks():
    m = transition_matrix(FOREST)
    big = expand_ab(m, FOREST, (5, 6))
    # the (0,2) zero entry becomes a 2x2 zero block
    for di in (0, 1):
        for dj in (0, 1):
            assert big[0 + di, 4 + dj].is_zero()


def test_expand_ab_rejects_non_breakable():
    with pytest.raises(PairError):
        expand_ab(transition_matrix(BROKEN6), BROKEN6, (1, 2))


def mat_mul_int_form(s, m, n):
    return [
        [
            sum(
                (m[k][j].scale(s[i][k]) for k in range(len(m))),
                LinearForm.zero(n),
            )
            for j in range(len(m))
        ]
        for i in range(len(m))
    ]


def test_block_expansion_commutes_with_row_operations():
    # (S x I2) * expand(M) == expand(S * M) for integer S and symbolic M
    rng = random.Random(9)
    chain = parse_poset(3, [(1, 2), (2, 3)])
    pair = (2, 3)
    n, dim = 3, 2
    basis = ((1, 2, 3), (9, 9, 9))  # placeholder words, only swap matters
    for _ in range(10):
        entries = tuple(
            tuple(
                LinearForm([rng.randint(-2, 2) for _ in range(n)])
                for _ in range(dim)
            )
            for _ in range(dim)
        )
        m = SymbolicMatrix(n, basis, entries)
        s = [[rng.randint(-3, 3) for _ in range(dim)] for _ in range(dim)]
        sm = SymbolicMatrix(
            n, basis, tuple(tuple(row) for row in mat_mul_int_form(s, entries, n))
        )
        left_inner = expand_ab(m, chain, pair)
        s_big = [
            [
                s[i // 2][j // 2] if i % 2 == j % 2 else 0
                for j in range(2 * dim)
            ]
            for i in range(2 * dim)
        ]
        left = mat_mul_int_form(s_big, [list(r) for r in left_inner.entries], n)
        right = expand_ab(sm, chain, pair)
        assert all(
            left[i][j] == right[i, j]
            for i in range(2 * dim)
            for j in range(2 * dim)
        )
