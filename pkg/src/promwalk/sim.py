"""Seeded Monte-Carlo simulation of the promotion walk and the right-factor
statistic used in the convergence analysis."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DimensionError
from .extensions import Word, hat_promotion, linear_extensions
from .poset import DEFAULT_CAP, Poset
from .stationary import convergence_bound, stationary_distribution

RNG_NAME = "numpy-PCG64"


@dataclass(frozen=True)
class SimReport:
    steps: int
    trials: int
    seed: int
    generator: str
    extensions: tuple  # state space in lexicographic order
    counts: tuple  # end-state tallies, integers summing to trials
    distribution: tuple  # counts / trials
    tv_to_stationary: float
    chernoff_bound: float


def step(p: Poset, pi: Word, x: Sequence[Fraction], rng: np.random.Generator) -> Word:
    """One walk step: sample label k with probability x_k, promote at k."""
    probs = np.array([float(v) for v in x])
    k = 1 + int(rng.choice(p.n, p=probs / probs.sum()))
    return hat_promotion(p, pi, k)


def simulate(
    p: Poset,
    x: Sequence[Fraction],
    k: int,
    trials: int,
    seed: int,
    cap: int = DEFAULT_CAP,
) -> SimReport:
    """Run `trials` walks of length k from the lexicographically least extension.

    Fully reproducible from the seed; all trials advance in lockstep through
    a precomputed state-by-label transition table.
    """
    if trials < 1:
        raise DimensionError("trials must be >= 1")
    exts = linear_extensions(p, cap=cap)
    index = {w: i for i, w in enumerate(exts)}
    table = np.array(
        [
            [index[hat_promotion(p, pi, lab)] for lab in range(1, p.n + 1)]
            for pi in exts
        ],
        dtype=np.int64,
    )
    cum = np.cumsum([float(v) for v in x])
    cum[-1] = 1.0
    rng = np.random.default_rng(seed)
    states = np.zeros(trials, dtype=np.int64)
    for _ in range(k):
        labels = np.searchsorted(cum, rng.random(trials), side="right")
        states = table[states, labels]
    counts = np.bincount(states, minlength=len(exts))
    dist = counts / trials
    stat = stationary_distribution(p, x, cap=cap)
    target = [float(stat.weights[pi]) for pi in exts]
    tv = tv_distance(dist.tolist(), target)
    bound, _ = convergence_bound(p.n, min(Fraction(v) for v in x), k)
    return SimReport(
        steps=k,
        trials=trials,
        seed=seed,
        generator=RNG_NAME,
        extensions=tuple(exts),
        counts=tuple(int(c) for c in counts),
        distribution=tuple(float(d) for d in dist),
        tv_to_stationary=tv,
        chernoff_bound=bound,
    )


def apply_word(p: Poset, pi: Word, word: Sequence[int]) -> Word:
    """Compose promotion-at-label steps, first label applied first."""
    for k in word:
        pi = hat_promotion(p, pi, k)
    return pi


def rfactor(
    p: Poset, word: Sequence[int], cap: int = DEFAULT_CAP
) -> tuple[Word, int]:
    """Longest common suffix of the images of all extensions under `word`.

    Returns (suffix, u) with u = n - len(suffix); u = 0 exactly when the word
    acts as a constant map on the extensions.
    """
    images = [apply_word(p, pi, word) for pi in linear_extensions(p, cap=cap)]
    suffix_len = 0
    while suffix_len < p.n and all(
        im[p.n - 1 - suffix_len] == images[0][p.n - 1 - suffix_len] for im in images
    ):
        suffix_len += 1
    suffix = images[0][p.n - suffix_len :] if suffix_len else ()
    return suffix, p.n - suffix_len


def tv_distance(d1: Sequence, d2: Sequence) -> float:
    """Half the L1 distance between two distributions on the same index set."""
    if len(d1) != len(d2):
        raise DimensionError("distributions have different supports")
    return float(sum(abs(float(a) - float(b)) for a, b in zip(d1, d2)) / 2)
