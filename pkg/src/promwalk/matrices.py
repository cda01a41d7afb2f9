"""Symbolic transition matrices, exact evaluation, Kronecker assembly, and
the 2x2 block expansion that models breaking a covering relation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ClassError, DimensionError, NonPositiveError, PairError
from .forms import LinearForm
from .poset import DEFAULT_CAP, Poset, breakable_pairs
from .extensions import Word, linear_extensions, promotion


@dataclass(frozen=True)
class SymbolicMatrix:
    n: int  # number of x-variables
    basis: tuple  # words indexing rows/columns
    entries: tuple  # tuple of tuples of LinearForm

    @property
    def dim(self) -> int:
        return len(self.basis)

    def row_sums(self) -> list[LinearForm]:
        return [
            sum(row[1:], row[0]) if row else LinearForm.zero(self.n)
            for row in self.entries
        ]

    def __getitem__(self, ij: tuple[int, int]) -> LinearForm:
        return self.entries[ij[0]][ij[1]]


@dataclass(frozen=True)
class RationalMatrix:
    entries: tuple  # tuple of tuples of Fraction

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.entries[ij[0]][ij[1]]


def transition_matrix(p: Poset, cap: int = DEFAULT_CAP) -> SymbolicMatrix:
    """Row-stochastic symbolic matrix of the promotion chain (lexicographic basis)."""
    exts = linear_extensions(p, cap=cap)
    index = {w: i for i, w in enumerate(exts)}
    dim = len(exts)
    grid = [[[0] * p.n for _ in range(dim)] for _ in range(dim)]
    for src, pi in enumerate(exts):
        for i in range(1, p.n + 1):
            tgt = index[promotion(p, pi, i)]
            grid[src][tgt][pi[i - 1] - 1] += 1
    entries = tuple(
        tuple(LinearForm(cell) for cell in row) for row in grid
    )
    return SymbolicMatrix(p.n, tuple(exts), entries)


def evaluate(m: SymbolicMatrix, x: Sequence[Fraction]) -> RationalMatrix:
    """Substitute a positive rational point into every entry."""
    if len(x) != m.n:
        raise DimensionError(f"expected {m.n} coordinates, got {len(x)}")
    xs = [Fraction(v) for v in x]
    if any(v <= 0 for v in xs):
        raise NonPositiveError("all coordinates must be > 0")
    return RationalMatrix(
        tuple(tuple(f.evaluate(xs) for f in row) for row in m.entries)
    )


# -- Kronecker assembly for ladders ------------------------------------------


def _kron(a: list, b: list):
    """Kronecker product over mixed int / LinearForm entries."""
    out = []
    for ra in a:
        for rb in b:
            row = []
            for va in ra:
                for vb in rb:
                    if isinstance(va, LinearForm):
                        row.append(va.scale(vb))
                    elif isinstance(vb, LinearForm):
                        row.append(vb.scale(va))
                    else:
                        row.append(va * vb)
            out.append(row)
    return out


def kron_assemble(levels: Sequence[tuple], n: int) -> SymbolicMatrix:
    """M for a ladder with the given levels (bottom-to-top label tuples).

    Returns the sum over levels t of I x ... x B_t x J x ... x J, with the
    tensor basis attached (earlier levels vary slowest; within a size-2
    level {a,b} with a < b, index 0 means a precedes b).
    """
    if not levels or any(len(lv) not in (1, 2) for lv in levels):
        raise ClassError("levels must be antichains of size 1 or 2")
    blocks = []
    for lv in levels:
        if len(lv) == 1:
            (a,) = lv
            blocks.append([[LinearForm.unit(n, a)]])
        else:
            a, b = sorted(lv)
            xa, xb = LinearForm.unit(n, a), LinearForm.unit(n, b)
            blocks.append([[xb, xa], [xb, xa]])
    sizes = [len(b) for b in blocks]
    dim = 1
    for s in sizes:
        dim *= s
    total = [[LinearForm.zero(n)] * dim for _ in range(dim)]
    for t in range(len(levels)):
        term = [[1]]
        for s, block in enumerate(blocks):
            if s < t:
                factor = [[1 if i == j else 0 for j in range(sizes[s])] for i in range(sizes[s])]
            elif s == t:
                factor = block
            else:
                k = sizes[s]
                factor = [[1 if i + j == k - 1 else 0 for j in range(k)] for i in range(k)]
            term = _kron(term, factor)
        for i in range(dim):
            for j in range(dim):
                v = term[i][j]
                # every term contains exactly one LinearForm factor, so int
                # entries can only be zeros that never met the form
                total[i][j] = total[i][j] + (LinearForm.zero(n) if isinstance(v, int) else v)
    basis = tuple(tensor_basis_words(levels))
    return SymbolicMatrix(n, basis, tuple(tuple(row) for row in total))


def tensor_basis_words(levels: Sequence[tuple]) -> list[Word]:
    """Extension word for each tensor index, earlier levels slowest."""
    words = [()]
    for lv in levels:
        if len(lv) == 1:
            words = [w + (lv[0],) for w in words]
        else:
            a, b = sorted(lv)
            words = [w + seg for w in words for seg in ((a, b), (b, a))]
    return words


# -- 2x2 block expansion ------------------------------------------------------


def expand_ab(m: SymbolicMatrix, p: Poset, pair: tuple[int, int]) -> SymbolicMatrix:
    """Expand M for P into the matrix of P with the order pair (a,b) removed.

    Each entry splits into a 2x2 block; the basis interleaves (pi, pi-hat)
    where pi-hat swaps a and b, following the order of m's basis.
    """
    a, b = pair
    if (a, b) not in breakable_pairs(p):
        raise PairError(f"({a},{b}) is not breakable in this poset")
    n, dim = m.n, m.dim
    grid = [[[0] * n for _ in range(2 * dim)] for _ in range(2 * dim)]
    for i in range(dim):
        for j in range(dim):
            coeffs = m.entries[i][j].coeffs
            for kk, c in enumerate(coeffs):
                if c == 0:
                    continue
                k = kk + 1
                if k == a:
                    grid[2 * i][2 * j + 1][a - 1] += c
                    grid[2 * i + 1][2 * j][b - 1] += c
                elif k == b:
                    grid[2 * i][2 * j][b - 1] += c
                    grid[2 * i + 1][2 * j + 1][a - 1] += c
                elif p.less(k, a):
                    grid[2 * i][2 * j + 1][k - 1] += c
                    grid[2 * i + 1][2 * j][k - 1] += c
                else:  # k not <= b
                    grid[2 * i][2 * j][k - 1] += c
                    grid[2 * i + 1][2 * j + 1][k - 1] += c
    swap = {a: b, b: a}
    basis = []
    for w in m.basis:
        basis.append(w)
        basis.append(tuple(swap.get(v, v) for v in w))
    entries = tuple(tuple(LinearForm(cell) for cell in row) for row in grid)
    return SymbolicMatrix(n, tuple(basis), entries)
