"""Integer linear forms in x_1..x_n and small multivariate polynomials.

Linear forms are the entry type of the symbolic transition matrix and the
value type of every predicted eigenvalue.  Multivariate polynomials only
appear as entries of ladder eigenvectors (products of linear forms).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class LinearForm:
    """Dense integer-coefficient linear combination of x_1..x_n."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        self.coeffs = tuple(int(c) for c in coeffs)

    @classmethod
    def zero(cls, n: int) -> "LinearForm":
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, k: int) -> "LinearForm":
        """The form x_k (labels are 1-based)."""
        return cls(tuple(1 if i == k - 1 else 0 for i in range(n)))

    @classmethod
    def full(cls, n: int) -> "LinearForm":
        """x_1 + ... + x_n."""
        return cls((1,) * n)

    @classmethod
    def from_support(cls, n: int, labels: Iterable[int]) -> "LinearForm":
        c = [0] * n
        for k in labels:
            c[k - 1] += 1
        return cls(c)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(a - b for a, b in zip(self.coeffs, other.coeffs, strict=True))

    def __neg__(self) -> "LinearForm":
        return LinearForm(-a for a in self.coeffs)

    def scale(self, c: int) -> "LinearForm":
        return LinearForm(c * a for a in self.coeffs)

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        if len(x) != len(self.coeffs):
            raise ValueError("point dimension mismatch")
        return sum((c * v for c, v in zip(self.coeffs, x)), Fraction(0))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            parts.append(f"{sign}{'' if mag == 1 else mag}x{i + 1}")
        return "".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"LinearForm({self})"


def parse_form(text: str, n: int) -> LinearForm:
    """Inverse of str(LinearForm), e.g. '-x1-x2+x6' or '2x3+x4' or '0'."""
    text = text.replace(" ", "")
    if text in ("", "0"):
        return LinearForm.zero(n)
    coeffs = [0] * n
    # split keeping signs
    terms = []
    cur = ""
    for ch in text:
        if ch in "+-" and cur:
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    for term in terms:
        sign = 1
        if term.startswith("+"):
            term = term[1:]
        elif term.startswith("-"):
            sign = -1
            term = term[1:]
        mag_s, _, idx_s = term.partition("x")
        mag = int(mag_s) if mag_s else 1
        k = int(idx_s)
        if not 1 <= k <= n:
            raise ValueError(f"variable index out of range: x{k}")
        coeffs[k - 1] += sign * mag
    return LinearForm(coeffs)


class MultiPoly:
    """Sparse integer polynomial in x_1..x_n, keyed by exponent tuple."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def constant(cls, n: int, c: int) -> "MultiPoly":
        return cls(n, {(0,) * n: c} if c else {})

    @classmethod
    def from_linear(cls, f: LinearForm) -> "MultiPoly":
        n = f.n
        terms = {}
        for i, c in enumerate(f.coeffs):
            if c:
                mono = tuple(1 if j == i else 0 for j in range(n))
                terms[mono] = c
        return cls(n, terms)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return MultiPoly(self.n, terms)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return MultiPoly(self.n, terms)

    def scale(self, c: int) -> "MultiPoly":
        return MultiPoly(self.n, {m: c * v for m, v in self.terms.items()})

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            val = Fraction(c)
            for e, xi in zip(m, x):
                if e:
                    val *= xi**e
            total += val
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"MultiPoly(n={self.n}, {len(self.terms)} terms)"
