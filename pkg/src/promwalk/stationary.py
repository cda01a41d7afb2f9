"""Stationary distribution of the promotion chain: closed-form weights,
the partition function for forest+ladder sums, and convergence bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ClassError, DimensionError, NonPositiveError
from .extensions import Word, linear_extensions
from .poset import DEFAULT_CAP, Poset, classify


def probability_vector(
    values: Sequence, n: int, normalize: bool = False
) -> tuple[Fraction, ...]:
    """Validated positive rational vector; normalized variants sum to 1 exactly."""
    if len(values) != n:
        raise DimensionError(f"expected {n} coordinates, got {len(values)}")
    xs = tuple(Fraction(v) for v in values)
    if any(v <= 0 for v in xs):
        raise NonPositiveError("all coordinates must be > 0")
    total = sum(xs)
    if normalize:
        return tuple(v / total for v in xs)
    if total != 1:
        raise NonPositiveError("coordinates must sum to 1 (or pass normalize)")
    return xs


@dataclass(frozen=True)
class StationaryReport:
    weights: dict  # extension word -> exact rational weight, summing to 1
    partition: Fraction


def stationary_weight(p: Poset, pi: Word, x: Sequence[Fraction]) -> Fraction:
    """Unnormalized weight: product of reciprocal prefix sums of x along pi."""
    w = Fraction(1)
    prefix = Fraction(0)
    for label in pi:
        prefix += x[label - 1]
        w /= prefix
    return w


def partition_factors(p: Poset) -> tuple[list, list]:
    """Symbolic factors of the partition function for a forest+ladder sum.

    Returns (firsts, seconds): one down-set form per element, and one
    (numerator, denominator) pair per size-2 ladder level, where the
    numerator sums x over the union of the two down-sets and the denominator
    is the sum of the two down-set forms.
    """
    from .forms import LinearForm

    sc = classify(p)
    if sc.tag == "Other":
        raise ClassError("partition function formula needs a forest+ladder sum")

    def down_form(labels) -> LinearForm:
        seen: set = set()
        for v in labels:
            seen |= p._below[v]
            seen.add(v)
        return LinearForm.from_support(p.n, seen)

    firsts = [down_form([i]) for i in range(1, p.n + 1)]
    seconds = []
    for dec in sc.components:
        for level in dec.levels:
            if len(level) == 2:
                a, b = level
                seconds.append((down_form([a, b]), down_form([a]) + down_form([b])))
    return firsts, seconds


def partition_function(p: Poset, x: Sequence[Fraction]) -> Fraction:
    """Normalizing constant for forest+ladder sums.

    Product over elements i of x(down-set of i), times, for every size-2
    ladder level {a,b}, x(down-set of a or b) / (x(down-set a) + x(down-set b)).
    """
    firsts, seconds = partition_factors(p)
    z = Fraction(1)
    for f in firsts:
        z *= f.evaluate(x)
    for num, den in seconds:
        z *= num.evaluate(x) / den.evaluate(x)
    return z


def stationary_distribution(
    p: Poset, x: Sequence[Fraction], cap: int = DEFAULT_CAP
) -> StationaryReport:
    """Exact stationary distribution over linear extensions.

    Uses the partition-function formula when the poset is in class, otherwise
    normalizes the raw weights by their sum.
    """
    exts = linear_extensions(p, cap=cap)
    raw = {pi: stationary_weight(p, pi, x) for pi in exts}
    if classify(p).tag != "Other":
        z = partition_function(p, x)
    else:
        z = 1 / sum(raw.values())
    return StationaryReport({pi: w * z for pi, w in raw.items()}, z)


def convergence_bound(n: int, p_x: Fraction, k: int) -> tuple[float, bool]:
    """Upper bound on total variation distance after k steps.

    exp(-(k*p_x - (n-1))^2 / (2*k*p_x)); valid only for k >= (n-1)/p_x,
    below that returns (1.0, False).  The only floating-point result in the
    library: it is a bound, not a certificate.
    """
    if k * Fraction(p_x) < n - 1:
        return 1.0, False
    kp = float(k * Fraction(p_x))
    return math.exp(-((kp - (n - 1)) ** 2) / (2 * kp)), True


def mixing_time_bound(n: int, p_x: Fraction, c: float) -> float:
    """Steps after which the convergence bound is at most exp(-c)."""
    if c <= 0:
        raise NonPositiveError("c must be > 0")
    return 2 * (n + float(c) - 1) / float(p_x)
