"""Independent verification of predicted spectra.

A predicted multiset of linear-form eigenvalues is checked against the exact
characteristic polynomial of the transition matrix at seeded rational sample
points.  A mismatch disproves the prediction; agreement at generic points
plus the degenerate all-equal point is strong sampling-based evidence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .charpoly import char_poly, poly_from_roots
from .errors import CapacityError, MultiplicityError
from .extensions import count_linear_extensions
from .forms import LinearForm
from .matrices import evaluate, transition_matrix
from .poset import DEFAULT_CAP, Poset
from .spectra import EigenvalueMultiset


@dataclass(frozen=True)
class VerificationReport:
    samples: tuple  # x-points used (tuples of Fraction)
    verdict: bool
    # (sample index, coefficient index, expected, got) for the first mismatch
    first_discrepancy: tuple | None


@dataclass(frozen=True)
class ExplorationReport:
    samples: tuple
    found: EigenvalueMultiset | None


def sample_points(n: int, samples: int, seed: int) -> list[tuple[Fraction, ...]]:
    """Seeded normalized rational points with distinct coordinates, plus the
    degenerate all-equal point last."""
    rng = random.Random(seed)
    points = []
    for _ in range(samples):
        nums = rng.sample(range(1, 20 * n + 1), n)
        d = sum(nums)
        points.append(tuple(Fraction(a, d) for a in nums))
    points.append(tuple(Fraction(1, n) for _ in range(n)))
    return points


def verify_spectrum(
    p: Poset,
    predicted: EigenvalueMultiset,
    samples: int = 3,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
) -> VerificationReport:
    """Compare the predicted spectrum with char_poly(M(x)) at each sample point.

    Comparison is coefficient-by-coefficient in lambda, exact rationals.
    """
    count = count_linear_extensions(p, cap=cap)
    if predicted.total() != count:
        raise MultiplicityError(
            f"multiplicities sum to {predicted.total()}, expected {count}"
        )
    m = transition_matrix(p, cap=cap)
    points = sample_points(p.n, samples, seed)
    for si, x in enumerate(points):
        actual = char_poly(evaluate(m, x))
        roots = [(form.evaluate(x), mult) for form, mult in predicted.sorted_items()]
        expected = poly_from_roots(roots)
        for ci, (e, a) in enumerate(zip(expected, actual)):
            if e != a:
                return VerificationReport(tuple(points), False, (si, ci, e, a))
    return VerificationReport(tuple(points), True, None)


def explore_factorization(
    p: Poset, samples: int = 3, seed: int = 0, cap: int = DEFAULT_CAP
) -> ExplorationReport:
    """Search for a spectrum over candidate forms with coefficients in {-1,0,1}.

    Advisory only: trial-divides the exact characteristic polynomial at the
    first sample point by candidate values, then confirms the resulting
    multiset at every other sample.  Returns found=None when no candidate
    multiset matches everywhere.
    """
    if p.n > 6:
        raise CapacityError("candidate search is limited to n <= 6")
    m = transition_matrix(p, cap=cap)
    points = sample_points(p.n, samples, seed)
    candidates = [
        LinearForm(c) for c in product((-1, 0, 1), repeat=p.n)
    ]
    candidates.sort(key=lambda f: f.coeffs, reverse=True)
    base = char_poly(evaluate(m, points[0]))
    # multiplicity of each candidate value at the first (generic) point
    by_value: dict = {}
    for f in candidates:
        by_value.setdefault(f.evaluate(points[0]), []).append(f)
    from .charpoly import poly_divide_root

    assignment = []
    poly = base
    for value, forms in by_value.items():
        mult = 0
        while len(poly) > 1:
            q = poly_divide_root(poly, value)
            if q is None:
                break
            poly = q
            mult += 1
        if mult:
            assignment.append((value, forms, mult))
    if len(poly) != 1:
        return ExplorationReport(tuple(points), None)
    # disambiguate value collisions using the remaining samples
    choice_lists = [
        [(f, mult) for f in forms] for value, forms, mult in assignment
    ]
    n_combos = 1
    for cl in choice_lists:
        n_combos *= len(cl)
    if n_combos > 10000:
        return ExplorationReport(tuple(points), None)
    for combo in product(*choice_lists):
        spec = EigenvalueMultiset(p.n)
        for f, mult in combo:
            spec.add(f, mult)
        ok = True
        for x in points[1:]:
            expected = poly_from_roots(
                [(f.evaluate(x), mu) for f, mu in spec.sorted_items()]
            )
            if expected != char_poly(evaluate(m, x)):
                ok = False
                break
        if ok:
            return ExplorationReport(tuple(points), spec)
    return ExplorationReport(tuple(points), None)
