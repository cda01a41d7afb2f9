"""Linear extensions and the promotion operators acting on them.

A linear extension is a tuple of labels pi_1..pi_n with pi_i < pi_j in P
only when i < j.  Promotion at position i applies the adjacent incomparable
swaps tau_i, tau_{i+1}, ..., tau_{n-1} in that order.
"""

from __future__ import annotations

from .errors import CapacityError, ClassError, PositionError
from .poset import DEFAULT_CAP, Poset, classify

Word = tuple


def linear_extensions(p: Poset, cap: int = DEFAULT_CAP) -> list[Word]:
    """All linear extensions in lexicographic order of the word."""
    result: list[Word] = []
    remaining_below = {v: len(p._downcovers[v]) for v in range(1, p.n + 1)}
    word: list[int] = []

    def rec():
        if len(word) == p.n:
            if len(result) >= cap:
                raise CapacityError(f"more than {cap} linear extensions")
            result.append(tuple(word))
            return
        for v in sorted(remaining_below):
            if remaining_below[v] == 0:
                del remaining_below[v]
                for w in p._upcovers[v]:
                    remaining_below[w] -= 1
                word.append(v)
                rec()
                word.pop()
                for w in p._upcovers[v]:
                    remaining_below[w] += 1
                remaining_below[v] = 0

    rec()
    return result


def count_linear_extensions(p: Poset, cap: int | None = None) -> int:
    """|L(P)| by dynamic programming over down-sets (no enumeration)."""
    from functools import lru_cache

    minimal_cache: dict = {}

    @lru_cache(maxsize=None)
    def count(used: frozenset) -> int:
        if len(used) == p.n:
            return 1
        total = 0
        for v in range(1, p.n + 1):
            if v not in used and p._below[v] <= used:
                total += count(used | {v})
        if cap is not None and total > cap:
            raise CapacityError(f"more than {cap} linear extensions")
        return total

    return count(frozenset())


def tau(p: Poset, pi: Word, i: int) -> Word:
    """Swap pi_i, pi_{i+1} when incomparable (i is 1-based, 1..n-1)."""
    if not 1 <= i <= p.n - 1:
        raise PositionError(f"tau position {i} out of range 1..{p.n - 1}")
    a, b = pi[i - 1], pi[i]
    if p.incomparable(a, b):
        return pi[: i - 1] + (b, a) + pi[i + 1 :]
    return pi


def promotion(p: Poset, pi: Word, i: int) -> Word:
    """Extended promotion at position i: tau_i first, then up to tau_{n-1}."""
    if not 1 <= i <= p.n:
        raise PositionError(f"promotion position {i} out of range 1..{p.n}")
    word = list(pi)
    for j in range(i - 1, p.n - 1):
        a, b = word[j], word[j + 1]
        if p.incomparable(a, b):
            word[j], word[j + 1] = b, a
    return tuple(word)


def hat_promotion(p: Poset, pi: Word, k: int) -> Word:
    """Promotion at the position where label k sits."""
    return promotion(p, pi, pi.index(k) + 1)


def hat_promotion_direct(p: Poset, pi: Word, k: int) -> Word:
    """Direct form for forest+ladder posets: move k last, reorder what is above.

    Letters j >= k are re-placed in the positions they occupy (after moving k
    to the end), ordered consistently with P, with incomparable same-level
    pairs taking the reverse of their original order in pi.
    """
    if classify(p).tag == "Other":
        raise ClassError("direct hat-promotion needs a forest+ladder poset")
    sigma = [v for v in pi if v != k] + [k]
    above = {j for j in range(1, p.n + 1) if p.less(k, j)} | {k}
    positions = [idx for idx, v in enumerate(sigma) if v in above]
    pos_in_pi = {v: idx for idx, v in enumerate(pi)}
    ordered: list[int] = []
    remaining = set(above)
    while remaining:
        mins = [v for v in remaining if not (p._below[v] & remaining)]
        if len(mins) == 1:
            pick = mins
        elif len(mins) == 2:
            # swap the original order of the incomparable pair
            pick = sorted(mins, key=lambda v: pos_in_pi[v], reverse=True)
        else:
            raise ClassError("more than two incomparable letters above k")
        for v in pick:
            ordered.append(v)
            remaining.remove(v)
    for idx, v in zip(positions, ordered):
        sigma[idx] = v
    return tuple(sigma)


def promotion_graph(
    p: Poset, cap: int = DEFAULT_CAP
) -> tuple[list[Word], list[tuple[int, int, int]]]:
    """Vertices (lexicographic extensions) and edges (src, tgt, label).

    One edge per (pi, position); parallel edges with distinct labels are kept.
    """
    exts = linear_extensions(p, cap=cap)
    index = {w: i for i, w in enumerate(exts)}
    edges = []
    for src, pi in enumerate(exts):
        for i in range(1, p.n + 1):
            target = promotion(p, pi, i)
            edges.append((src, index[target], pi[i - 1]))
    return exts, edges
