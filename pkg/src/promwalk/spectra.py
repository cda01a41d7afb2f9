"""Symbolic eigenvalue engines for the promotion transition matrix.

Four engines produce predicted spectra as multisets of linear forms:
rooted forests (upset lattice), unions of consecutively labeled chains
(poset derangements), ladders (constructive eigensystem), and the
edge-break recursion that reduces forest+ladder sums to forests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ClassError, LabelingError, PairError, RangeError, UpsetPropertyError
from .forms import LinearForm, MultiPoly
from .poset import (
    DEFAULT_CAP,
    Poset,
    break_cover,
    breakable_pairs,
    chain_completion,
    classify,
    is_rooted_forest,
    is_ladder,
    is_union_of_chains,
    poset_derangements,
    upset_lattice,
    _peel_component,
)


class EigenvalueMultiset:
    """Multiset of eigenvalues, each a canonical LinearForm with multiplicity."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: dict | None = None):
        self.n = n
        self.entries: dict = {}
        for form, mult in (entries or {}).items():
            self.add(form, mult)

    def add(self, form: LinearForm, mult: int) -> None:
        if mult < 0:
            raise ValueError("multiplicity must be nonnegative")
        if mult == 0:
            return
        self.entries[form] = self.entries.get(form, 0) + mult

    def total(self) -> int:
        return sum(self.entries.values())

    def sorted_items(self) -> list[tuple[LinearForm, int]]:
        """Deterministic order: descending by coefficient vector."""
        return sorted(self.entries.items(), key=lambda kv: kv[0].coeffs, reverse=True)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, EigenvalueMultiset)
            and self.n == other.n
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        inner = ", ".join(f"{f}:{m}" for f, m in self.sorted_items())
        return f"EigenvalueMultiset({{{inner}}})"


@dataclass(frozen=True)
class LadderEigenPair:
    value: LinearForm
    vector: tuple  # MultiPoly entries, indexed like the tensor basis


@lru_cache(maxsize=None)
def classical_derangements(j: int) -> int:
    """Fixed-point-free permutations of j letters."""
    if j < 0:
        raise RangeError(f"derangement index must be >= 0, got {j}")
    if j == 0:
        return 1
    if j == 1:
        return 0
    return (j - 1) * (classical_derangements(j - 1) + classical_derangements(j - 2))


def forest_spectrum(p: Poset, cap: int = DEFAULT_CAP) -> EigenvalueMultiset:
    """Eigenvalue x_S with multiplicity d_S, over upsets S of a rooted forest."""
    if not is_rooted_forest(p):
        raise ClassError("poset is not a rooted forest")
    lattice = upset_lattice(p, cap)
    out = EigenvalueMultiset(p.n)
    for s, d in lattice.derangement.items():
        out.add(LinearForm.from_support(p.n, s), d)
    return out


def _consecutive_chain_union(p: Poset) -> bool:
    """Union of chains, each labeled by a run of consecutive increasing integers."""
    if not is_union_of_chains(p):
        return False
    for comp in p.components():
        labels = sorted(comp)
        if labels != list(range(labels[0], labels[0] + len(labels))):
            return False
        for u, v in zip(labels, labels[1:]):
            if not p.less(u, v):
                return False
    return True


def chain_union_spectrum(p: Poset, cap: int = DEFAULT_CAP) -> EigenvalueMultiset:
    """Eigenvalue x_S per upset S, multiplicity = derangements of the complement."""
    if not is_union_of_chains(p):
        raise ClassError("poset is not a union of chains")
    if not _consecutive_chain_union(p):
        raise LabelingError("chains must be labeled consecutively bottom to top")
    ground = set(range(1, p.n + 1))
    out = EigenvalueMultiset(p.n)
    lattice = upset_lattice(p, cap)
    for s in lattice.nodes:
        mult = poset_derangements(p.restrict(ground - s), cap)
        out.add(LinearForm.from_support(p.n, s), mult)
    return out


def ladder_levels(p: Poset) -> tuple:
    """Levels of a single-component ladder, bottom to top."""
    if not is_ladder(p):
        raise ClassError("poset is not a ladder")
    dec = _peel_component(p, frozenset(range(1, p.n + 1)))
    return dec.levels


def ladder_eigensystem(p: Poset) -> list[LadderEigenPair]:
    """All eigenvalue/eigenvector pairs of a ladder, one per branch choice.

    A size-1 level {a} adds x_a to the running value.  A size-2 level {a,b}
    either adds x_a+x_b with vector block (1,1), or negates the running value
    with vector block (-x_a - c, x_b + c).  The count equals the number of
    linear extensions, which exhibits diagonalizability.
    """
    levels = ladder_levels(p)
    n = p.n
    one = MultiPoly.constant(n, 1)
    results: list[LadderEigenPair] = []

    def rec(i: int, c: LinearForm, vec: list):
        if i == len(levels):
            results.append(LadderEigenPair(c, tuple(vec)))
            return
        lv = levels[i]
        if len(lv) == 1:
            rec(i + 1, c + LinearForm.unit(n, lv[0]), [u * one for u in vec])
            return
        a, b = lv
        xa, xb = LinearForm.unit(n, a), LinearForm.unit(n, b)
        rec(i + 1, c + xa + xb, [u * w for u in vec for w in (one, one)])
        lo = MultiPoly.from_linear(-xa - c)
        hi = MultiPoly.from_linear(xb + c)
        rec(i + 1, -c, [u * w for u in vec for w in (lo, hi)])

    rec(0, LinearForm.zero(n), [one])
    return results


def check_upset_property(spec: EigenvalueMultiset, p: Poset) -> list[tuple]:
    """Violations of the two support conditions, per eigenvalue and breakable pair.

    (a) if x_a appears then x_b appears with the same coefficient;
    (b) if x_b appears without x_a then nothing below a appears.
    """
    violations = []
    for a, b in sorted(breakable_pairs(p)):
        for form in spec.entries:
            ca, cb = form.coeffs[a - 1], form.coeffs[b - 1]
            if ca != 0 and cb != ca:
                violations.append((form, (a, b), "a"))
            elif ca == 0 and cb != 0:
                if any(form.coeffs[k - 1] != 0 for k in p._below[a]):
                    violations.append((form, (a, b), "b"))
    return violations


def break_edge_spectrum(
    spec: EigenvalueMultiset, p: Poset, pair: tuple[int, int]
) -> EigenvalueMultiset:
    """Spectrum after removing the order pair (a,b); each eigenvalue splits in two."""
    a, b = pair
    if (a, b) not in breakable_pairs(p):
        raise PairError(f"({a},{b}) is not a breakable pair")
    n = p.n
    out = EigenvalueMultiset(n)
    for form, mult in spec.entries.items():
        ca, cb = form.coeffs[a - 1], form.coeffs[b - 1]
        if ca != 0 and cb != ca:
            raise UpsetPropertyError(
                f"eigenvalue {form} breaks support condition (a) at pair ({a},{b})"
            )
        out.add(form, mult)
        if ca == 0 and cb != 0:
            second = list(form.coeffs)
            second[b - 1] = 0
            second[a - 1] += cb
        else:
            second = [0] * n
            for k in range(1, n + 1):
                if not p.leq(k, b):
                    second[k - 1] = form.coeffs[k - 1]
                elif p.less(k, a):
                    second[k - 1] = -form.coeffs[k - 1]
        out.add(LinearForm(second), mult)
    return out


def forest_ladder_spectrum(p: Poset, cap: int = DEFAULT_CAP) -> EigenvalueMultiset:
    """Spectrum of any forest+ladder ordinal-sum union.

    Pipeline: complete each size-2 ladder level to a chain, take the forest
    spectrum of the completion, then split eigenvalues once per broken edge.
    """
    if classify(p).tag == "Other":
        raise ClassError("poset is not a union of forest+ladder ordinal sums")
    completed, breaks = chain_completion(p)
    if _consecutive_chain_union(completed):
        spec = chain_union_spectrum(completed, cap)
    else:
        spec = forest_spectrum(completed, cap)
    cur = completed
    for pair in breaks:
        spec = break_edge_spectrum(spec, cur, pair)
        cur = break_cover(cur, pair)
    return spec


def ak_a2_minus_edge_spectrum(k: int) -> EigenvalueMultiset:
    """Spectrum of the size-(k+2) poset: antichain on 1..k below the antichain
    {k+1, k+2}, with the single order pair (k, k+1) removed.

    Values: x_{k+2} with multiplicity (k-1)!; x_U + x_{k+1} + x_{k+2} for
    U subset of [k]; -x_U for U subset of [k-1]; multiplicities from classical
    derangement numbers.
    """
    if k < 1:
        raise RangeError(f"k must be >= 1, got {k}")
    n = k + 2
    out = EigenvalueMultiset(n)
    fact = 1
    for j in range(2, k):
        fact *= j
    out.add(LinearForm.unit(n, n), fact)
    for mask in range(1 << k):
        u = [i + 1 for i in range(k) if mask >> i & 1]
        form = LinearForm.from_support(n, u + [k + 1, k + 2])
        out.add(form, classical_derangements(k - len(u)))
        if k not in u:
            j = k - len(u)
            assert j - 1 >= 0
            mult = classical_derangements(j) + classical_derangements(j - 1)
            out.add(-LinearForm.from_support(n, u), mult)
    return out
