"""Finite posets on [n]: validation, upset lattice, structural classification.

Elements are integers 1..n.  Covers are the Hasse diagram; the strict order
is their transitive closure.  All values are immutable after construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    ClassError,
    CapacityError,
    CycleError,
    NotNaturalError,
    PairError,
    RangeError,
    RedundantCoverError,
)

DEFAULT_CAP = 5000


class Poset:
    """Poset on {1..n} given by Hasse-minimal cover pairs (a, b) with a < b in P."""

    __slots__ = ("n", "covers", "_below", "_above", "_upcovers", "_downcovers")

    def __init__(self, n: int, covers: Iterable[tuple[int, int]], validate: bool = True):
        if n < 0:
            raise RangeError(f"n must be nonnegative, got {n}")
        self.n = n
        cover_set = frozenset((int(a), int(b)) for a, b in covers)
        for a, b in cover_set:
            if not (1 <= a <= n and 1 <= b <= n):
                raise RangeError(f"cover ({a},{b}) out of range for n={n}")
            if a == b:
                raise CycleError(f"self-loop cover ({a},{b})")
        self.covers = cover_set
        self._upcovers = {i: [] for i in range(1, n + 1)}
        self._downcovers = {i: [] for i in range(1, n + 1)}
        for a, b in sorted(cover_set):
            self._upcovers[a].append(b)
            self._downcovers[b].append(a)
        self._below, self._above = self._closure()
        if validate:
            self._check_hasse_minimal()

    def _closure(self):
        # above[a] = {b : a < b}, computed by DFS in topological order
        above = {i: set() for i in range(1, self.n + 1)}
        state = {}  # 0=visiting, 1=done

        def visit(v, stack):
            state[v] = 0
            for w in self._upcovers[v]:
                if state.get(w) == 0:
                    raise CycleError(f"covers contain a directed cycle through {w}")
                if w not in state:
                    visit(w, stack)
                above[v].add(w)
                above[v] |= above[w]
            state[v] = 1

        for v in range(1, self.n + 1):
            if v not in state:
                visit(v, [])
        below = {i: set() for i in range(1, self.n + 1)}
        for a, bs in above.items():
            for b in bs:
                below[b].add(a)
        return below, above

    def _check_hasse_minimal(self):
        for a, b in self.covers:
            for c in self._above[a]:
                if c != b and b in self._above[c]:
                    raise RedundantCoverError(
                        f"cover ({a},{b}) is implied through {c}"
                    )

    # -- order queries ----------------------------------------------------

    def less(self, a: int, b: int) -> bool:
        return b in self._above[a]

    def leq(self, a: int, b: int) -> bool:
        return a == b or b in self._above[a]

    def incomparable(self, a: int, b: int) -> bool:
        return a != b and not self.less(a, b) and not self.less(b, a)

    def above(self, a: int) -> frozenset:
        """Elements strictly above a."""
        return frozenset(self._above[a])

    def below(self, a: int) -> frozenset:
        """Elements strictly below a."""
        return frozenset(self._below[a])

    def down_set(self, a: int) -> frozenset:
        """{s : s <= a}."""
        return frozenset(self._below[a] | {a})

    def upcovers(self, a: int) -> tuple:
        return tuple(self._upcovers[a])

    def downcovers(self, a: int) -> tuple:
        return tuple(self._downcovers[a])

    def order_pairs(self) -> frozenset:
        """All strict order pairs (a, b) with a < b in P."""
        return frozenset((a, b) for a in range(1, self.n + 1) for b in self._above[a])

    def maximal_elements(self, subset: Iterable[int] | None = None) -> frozenset:
        elems = set(subset) if subset is not None else set(range(1, self.n + 1))
        return frozenset(x for x in elems if not (self._above[x] & elems))

    def minimal_elements(self, subset: Iterable[int] | None = None) -> frozenset:
        elems = set(subset) if subset is not None else set(range(1, self.n + 1))
        return frozenset(x for x in elems if not (self._below[x] & elems))

    def components(self) -> list[frozenset]:
        """Connected components of the Hasse diagram, sorted by least label."""
        adj = {i: set() for i in range(1, self.n + 1)}
        for a, b in self.covers:
            adj[a].add(b)
            adj[b].add(a)
        seen: set = set()
        comps = []
        for v in range(1, self.n + 1):
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return sorted(comps, key=min)

    def restrict(self, labels: Iterable[int]) -> "Poset":
        """Induced subposet on `labels`, relabeled order-preservingly to 1..m."""
        keep = sorted(set(labels))
        idx = {v: i + 1 for i, v in enumerate(keep)}
        pairs = [
            (a, b) for a in keep for b in keep if a != b and self.less(a, b)
        ]
        # transitive reduction of the induced order
        covers = []
        keep_set = set(keep)
        for a, b in pairs:
            if not any(
                c in keep_set and self.less(a, c) and self.less(c, b)
                for c in self._above[a]
            ):
                covers.append((idx[a], idx[b]))
        return Poset(len(keep), covers, validate=False)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Poset)
            and self.n == other.n
            and self.covers == other.covers
        )

    def __hash__(self) -> int:
        return hash((self.n, self.covers))

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={sorted(self.covers)})"


def parse_poset(n: int, covers: Iterable[tuple[int, int]]) -> Poset:
    """Validated constructor: rejects cycles, redundant covers, bad labels."""
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    return Poset(n, covers, validate=True)


def poset_from_text(text: str) -> Poset:
    """Text format: 'n <count>' then 'cover <a> <b>' lines; '#' comments."""
    n = None
    covers = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n" and len(parts) == 2:
            n = int(parts[1])
        elif parts[0] == "cover" and len(parts) == 3:
            covers.append((int(parts[1]), int(parts[2])))
        else:
            raise RangeError(f"unrecognized line {lineno}: {raw!r}")
    if n is None:
        raise RangeError("missing 'n <count>' line")
    return parse_poset(n, covers)


def poset_from_json(text: str) -> Poset:
    data = json.loads(text)
    return parse_poset(int(data["n"]), [tuple(p) for p in data["covers"]])


def poset_to_json(p: Poset) -> str:
    return json.dumps({"n": p.n, "covers": sorted(map(list, p.covers))})


def is_naturally_labeled(p: Poset) -> bool:
    """True iff a < b in P implies a < b as integers."""
    return all(a < b for a, b in p.order_pairs())


# -- upset lattice ---------------------------------------------------------


@dataclass(frozen=True)
class UpsetLattice:
    nodes: tuple  # frozensets, sorted by (size, sorted labels)
    inclusion_covers: tuple  # pairs of node indices (i, j): node_i covered by node_j
    derangement: dict  # node frozenset -> d_S


def enumerate_upsets(p: Poset, cap: int = DEFAULT_CAP) -> list[frozenset]:
    """All upsets of p, sorted by (size, lexicographic)."""
    # Decide membership top-down so the upper covers of each candidate are
    # already decided when it is considered.
    order = sorted(range(1, p.n + 1), key=lambda v: (len(p._below[v]), v), reverse=True)
    upsets: list[frozenset] = []

    def rec(i: int, current: set):
        if len(upsets) > cap:
            raise CapacityError(f"more than {cap} upsets")
        if i == len(order):
            upsets.append(frozenset(current))
            return
        v = order[i]
        rec(i + 1, current)
        if all(u in current for u in p._upcovers[v]):
            current.add(v)
            rec(i + 1, current)
            current.remove(v)

    rec(0, set())
    if len(upsets) > cap:
        raise CapacityError(f"more than {cap} upsets")
    return sorted(upsets, key=lambda s: (len(s), sorted(s)))


def upset_lattice(p: Poset, cap: int = DEFAULT_CAP) -> UpsetLattice:
    """Lattice of upsets by inclusion, with derangement number per node.

    d_S = sum over upsets T >= S of mu(S, T) * f([T, top]), where f counts
    maximal chains in the lattice interval and mu is its Moebius function.
    """
    nodes = enumerate_upsets(p, cap)
    index = {s: i for i, s in enumerate(nodes)}
    m = len(nodes)
    # In the lattice of upsets, T covers S iff T = S + one element.
    covers = []
    up_neighbors = [[] for _ in range(m)]
    for i, s in enumerate(nodes):
        for x in range(1, p.n + 1):
            if x in s:
                continue
            t = s | {x}
            j = index.get(t)
            if j is not None:
                covers.append((i, j))
                up_neighbors[i].append(j)
    # maximal chain counts to the top
    order_idx = sorted(range(m), key=lambda i: len(nodes[i]), reverse=True)
    f = [0] * m
    f[index[frozenset(range(1, p.n + 1))]] = 1
    for i in order_idx:
        if f[i]:
            continue
        f[i] = sum(f[j] for j in up_neighbors[i])
    # supersets per node (inclusion order)
    supersets = [
        [j for j in range(m) if nodes[i] <= nodes[j]] for i in range(m)
    ]
    mu_cache: dict = {}

    def mu(i: int, j: int) -> int:
        if i == j:
            return 1
        key = (i, j)
        if key in mu_cache:
            return mu_cache[key]
        val = -sum(
            mu(i, k)
            for k in supersets[i]
            if nodes[k] < nodes[j]
        )
        mu_cache[key] = val
        return val

    derangement = {}
    for i, s in enumerate(nodes):
        derangement[s] = sum(mu(i, j) * f[j] for j in supersets[i])
    return UpsetLattice(tuple(nodes), tuple(covers), derangement)


# -- derangements ----------------------------------------------------------


def poset_derangements(p: Poset, cap: int = DEFAULT_CAP) -> int:
    """Number of linear extensions with no fixed point; 1 for the empty poset."""
    if p.n == 0:
        return 1
    if not is_naturally_labeled(p):
        raise NotNaturalError("poset is not naturally labeled")
    from .extensions import linear_extensions  # local import, avoids cycle

    count = 0
    for word in linear_extensions(p, cap=cap):
        if all(word[i] != i + 1 for i in range(p.n)):
            count += 1
    return count


# -- structural classification ---------------------------------------------


@dataclass(frozen=True)
class ComponentDecomposition:
    forest: tuple  # forest part labels, sorted
    levels: tuple  # ladder levels bottom-to-top, each a sorted tuple of size 1 or 2


@dataclass(frozen=True)
class StructureClass:
    tag: str  # RootedForest | UnionOfChains | Ladder | ForestLadderSum | Other
    components: tuple  # ComponentDecomposition per component, or () for Other

    @property
    def levels(self) -> tuple:
        """Ladder levels when the whole poset is a single ladder."""
        if self.tag != "Ladder":
            raise ClassError("not a ladder")
        return self.components[0].levels


def is_rooted_forest(p: Poset) -> bool:
    """Every element has at most one upper cover."""
    return all(len(p._upcovers[v]) <= 1 for v in range(1, p.n + 1))


def is_union_of_chains(p: Poset) -> bool:
    return all(
        len(p._upcovers[v]) <= 1 and len(p._downcovers[v]) <= 1
        for v in range(1, p.n + 1)
    )


def _peel_component(p: Poset, comp: frozenset) -> ComponentDecomposition | None:
    """Maximal-ladder peel from the top; None if no forest+ladder split exists."""
    rem = set(comp)
    levels: list[tuple] = []
    while rem:
        top = p.maximal_elements(rem)
        if len(top) > 2:
            break
        rest = rem - top
        if not all(p.less(z, t) for z in rest for t in top):
            break
        levels.insert(0, tuple(sorted(top)))
        rem = rest
    # remainder must be a rooted forest (within the component)
    for v in rem:
        if sum(1 for w in p._upcovers[v] if w in rem) > 1:
            return None
    return ComponentDecomposition(tuple(sorted(rem)), tuple(levels))


def is_ladder(p: Poset) -> bool:
    """Single connected component that is an ordinal sum of antichains of size <= 2."""
    if p.n == 0 or len(p.components()) != 1:
        return False
    dec = _peel_component(p, frozenset(range(1, p.n + 1)))
    return dec is not None and not dec.forest


def classify(p: Poset) -> StructureClass:
    comps = p.components()
    if all(
        all(len(p._upcovers[v]) <= 1 and len(p._downcovers[v]) <= 1 for v in c)
        for c in comps
    ):
        tag = "UnionOfChains"
    elif is_rooted_forest(p):
        tag = "RootedForest"
    elif len(comps) == 1 and is_ladder(p):
        tag = "Ladder"
    else:
        tag = "ForestLadderSum"
    decs = []
    for c in comps:
        dec = _peel_component(p, c)
        if dec is None:
            return StructureClass("Other", ())
        decs.append(dec)
    return StructureClass(tag, tuple(decs))


def decomposition_order(p: Poset, sc: StructureClass) -> frozenset:
    """Strict order pairs implied by a classification (reconstruction check)."""
    pairs: set = set()
    for dec in sc.components:
        forest = set(dec.forest)
        for a in forest:
            for b in p._above[a]:
                if b in forest:
                    pairs.add((a, b))
        below: set = set(forest)
        for level in dec.levels:
            for u in below:
                for v in level:
                    pairs.add((u, v))
            below |= set(level)
    return frozenset(pairs)


# -- breakable pairs and chain completion -----------------------------------


def breakable_pairs(p: Poset) -> frozenset:
    """Cover pairs (a,b) whose component is ... + Q' + a + b + Q'' (ordinal sum)."""
    comps = p.components()
    comp_of = {}
    for c in comps:
        for v in c:
            comp_of[v] = c
    result = set()
    for a, b in p.covers:
        comp = comp_of[a]
        ok = all(
            c == a or c == b or p.less(c, a) or p.less(b, c) for c in comp
        )
        if ok:
            result.add((a, b))
    return frozenset(result)


def break_cover(p: Poset, pair: tuple[int, int]) -> Poset:
    """Remove the single order pair (a,b); (a,b) must be a cover of p."""
    a, b = pair
    if (a, b) not in p.covers:
        raise PairError(f"({a},{b}) is not a cover")
    new_order = p.order_pairs() - {(a, b)}
    # transitive reduction
    above = {i: set() for i in range(1, p.n + 1)}
    for u, v in new_order:
        above[u].add(v)
    covers = [
        (u, v)
        for u, v in new_order
        if not any(w in above[u] and v in above[w] for w in above[u] if w != v)
    ]
    return Poset(p.n, covers, validate=False)


def chain_completion(p: Poset) -> tuple[Poset, list[tuple[int, int]]]:
    """Replace each size-2 ladder level {a,b} (a<b) with the chain a<b.

    Returns the completed forest poset and the list of edges to break,
    bottom-to-top within each component, components by least label.
    """
    sc = classify(p)
    if sc.tag == "Other":
        raise ClassError("poset is not a union of forest+ladder ordinal sums")
    covers: set = set()
    break_list: list[tuple[int, int]] = []
    for dec in sc.components:
        forest = set(dec.forest)
        # forest covers are inherited
        for v in forest:
            for w in p._upcovers[v]:
                if w in forest:
                    covers.add((v, w))
        # flatten ladder levels into a chain
        chain: list[int] = []
        for level in dec.levels:
            chain.extend(sorted(level))
            if len(level) == 2:
                a, b = sorted(level)
                break_list.append((a, b))
        for u, v in zip(chain, chain[1:]):
            covers.add((u, v))
        if chain and forest:
            prime = Poset(p.n, [c for c in p.covers if c[0] in forest and c[1] in forest], validate=False)
            for r in forest:
                if not (prime._above[r] & forest):
                    covers.add((r, chain[0]))
    completed = Poset(p.n, covers, validate=False)
    return completed, break_list
