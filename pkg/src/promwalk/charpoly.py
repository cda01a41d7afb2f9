"""Exact characteristic polynomials of rational matrices.

det(lambda*I - M) is computed by clearing denominators to an integer matrix,
running a Hessenberg-reduction characteristic polynomial modulo enough
word-sized primes, and reconstructing the integer coefficients by CRT.
A Hadamard-style bound on the coefficients makes the reconstruction exact,
so the result is certified, not probabilistic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .matrices import RationalMatrix

# primes must satisfy dim * p^2 < 2^63 for the int64 accumulations below
_PRIME_CEILING = 1 << 27
_MAX_DIM = (1 << 63) // (_PRIME_CEILING * _PRIME_CEILING)  # 512


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if m % q == 0:
            return m == q
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=1)
def _prime_pool() -> tuple:
    primes = []
    q = _PRIME_CEILING - 1
    while len(primes) < 400:
        if _is_prime(q):
            primes.append(q)
        q -= 2
    return tuple(primes)


def _charpoly_mod(N: np.ndarray, p: int) -> np.ndarray:
    """Coefficients of det(mu*I - N) over F_p, ascending degree."""
    d = N.shape[0]
    H = np.mod(N, p).astype(np.int64)
    for j in range(d - 2):
        col = H[j + 1 :, j]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = j + 1 + int(nz[0])
        if piv != j + 1:
            H[[j + 1, piv], :] = H[[piv, j + 1], :]
            H[:, [j + 1, piv]] = H[:, [piv, j + 1]]
        inv = pow(int(H[j + 1, j]), p - 2, p)
        mult = (H[j + 2 :, j] * inv) % p
        H[j + 2 :, j:] = (H[j + 2 :, j:] - mult[:, None] * H[j + 1, j:]) % p
        H[:, j + 1] = (H[:, j + 1] + H[:, j + 2 :] @ mult) % p
    # char polys of leading principal minors of the Hessenberg form
    pol = np.zeros((d + 1, d + 1), dtype=np.int64)
    pol[0, 0] = 1
    for i in range(1, d + 1):
        prev = pol[i - 1]
        cur = np.zeros(d + 1, dtype=np.int64)
        cur[1 : i + 1] = prev[:i]  # lambda * prev
        cur[:i] = (cur[:i] - H[i - 1, i - 1] * prev[:i]) % p
        cur[i] %= p
        # correction terms from the subdiagonal
        prod = 1
        if i >= 2:
            w = np.zeros(i - 1, dtype=np.int64)
            for m in range(1, i):
                prod = (prod * int(H[i - m, i - m - 1])) % p
                if prod == 0:
                    break
                w[m - 1] = (int(H[i - m - 1, i - 1]) * prod) % p
            # subtract sum_m w[m-1] * pol[i-m-1]
            rows = pol[i - 2 :: -1][: i - 1]  # pol[i-2], pol[i-3], ..., pol[0]
            corr = (w[:, None] * rows[:, : d + 1]) % p
            cur = (cur - corr.sum(axis=0)) % p
        pol[i] = cur % p
    return pol[d] % p


def _crt(residues: list[int], primes: list[int]) -> int:
    """Symmetric CRT lift."""
    x, mod = 0, 1
    for r, p in zip(residues, primes):
        t = ((r - x) * pow(mod % p, p - 2, p)) % p
        x += mod * t
        mod *= p
    if 2 * x > mod:
        x -= mod
    return x


def char_poly(m: RationalMatrix) -> list[Fraction]:
    """det(lambda*I - m), coefficients ascending, leading coefficient 1."""
    d = m.dim
    if d == 0:
        return [Fraction(1)]
    if d > _MAX_DIM:
        raise ValueError(f"dimension {d} exceeds supported maximum {_MAX_DIM}")
    denom = 1
    for row in m.entries:
        for v in row:
            denom = denom * v.denominator // math.gcd(denom, v.denominator)
    N = [[int(v * denom) for v in row] for row in m.entries]
    # |coeff_k of det(mu I - N)| <= C(d,k) * B^k with B = max row 1-norm
    B = max(2, max(sum(abs(v) for v in row) for row in N))
    bound_bits = d + d * math.log2(B) + 2
    primes: list[int] = []
    got_bits = 0.0
    pool = _prime_pool()
    for p in pool:
        primes.append(p)
        got_bits += math.log2(p)
        if got_bits > bound_bits:
            break
    else:
        raise ValueError("prime pool exhausted; matrix entries too large")
    if max(max(abs(v) for v in row) for row in N) < (1 << 62):
        Nint = np.array(N, dtype=np.int64)
        mods = [Nint % p for p in primes]
    else:
        mods = [
            np.array([[v % p for v in row] for row in N], dtype=np.int64)
            for p in primes
        ]
    residue_rows = [
        [int(c) for c in _charpoly_mod(Nmod, p)] for Nmod, p in zip(mods, primes)
    ]
    ints = [
        _crt([row[k] for row in residue_rows], primes) for k in range(d + 1)
    ]
    # descale: det(lambda I - M) = denom^(k-d) scaling per coefficient
    return [Fraction(ints[k], denom ** (d - k)) for k in range(d + 1)]


def poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def poly_from_roots(roots: list[tuple[Fraction, int]]) -> list[Fraction]:
    """prod (lambda - r)^mult, coefficients ascending."""
    out = [Fraction(1)]
    for r, mult in roots:
        for _ in range(mult):
            out = poly_mul(out, [-r, Fraction(1)])
    return out


def poly_divide_root(poly: list[Fraction], r: Fraction) -> list[Fraction] | None:
    """Synthetic division by (lambda - r); None if the remainder is nonzero."""
    q = [Fraction(0)] * (len(poly) - 1)
    carry = Fraction(0)
    for k in range(len(poly) - 1, 0, -1):
        carry = poly[k] + carry * r
        q[k - 1] = carry
    rem = poly[0] + carry * r
    return None if rem != 0 else q
