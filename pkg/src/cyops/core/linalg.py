"""Exact linear algebra over Q.

``rref`` eliminates directly over mpq. ``nullspace`` works modulo
word-size primes, lifts the reduced echelon form by CRT and rational
reconstruction, and checks the lifted basis exactly against the integer
matrix; it falls back to elimination over Q if the lift does not settle.
"""

from __future__ import annotations

from math import lcm

import gmpy2
from gmpy2 import mpq, mpz
import numpy as np

_PRIMES = []


def _primes():
    """The largest primes below 2^31 (products fit in int64)."""
    if not _PRIMES:
        p = mpz(2) ** 31
        while len(_PRIMES) < 120:
            p -= 1
            while not gmpy2.is_prime(p):
                p -= 1
            _PRIMES.append(int(p))
    return _PRIMES


def rref(rows, ncols: int):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [[mpq(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        row = [x * inv for x in m[r]]
        m[r] = row
        nz = [j for j in range(c, ncols) if row[j] != 0]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    mi = m[i]
                    for j in nz:
                        mi[j] -= f * row[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _integer_rows(rows):
    out = []
    for r in rows:
        r = [mpq(x) for x in r]
        d = lcm(*(int(x.denominator) for x in r)) if r else 1
        ir = [int(x.numerator) * (d // int(x.denominator)) for x in r]
        if any(ir):
            out.append(ir)
    return out


def _rref_mod(rows, ncols: int, p: int):
    """RREF modulo p < 2^31 with numpy int64 arithmetic."""
    A = (np.array(rows, dtype=object) % p).astype(np.int64).reshape(len(rows), ncols)
    nrows = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - (col[hit, None] * A[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return [[int(x) for x in row] for row in A[:r]], pivots


def rank_mod(rows, ncols: int, p: int | None = None) -> int:
    """Rank modulo a large prime (a lower bound for the rank over Q)."""
    p = p or _primes()[0]
    ints = _integer_rows(rows)
    return len(_rref_mod(ints, ncols, p)[1]) if ints else 0


def _ratrec(a: int, m: int):
    """Rational reconstruction of a mod m with |num|, den <= sqrt(m/2)."""
    bound = gmpy2.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return mpq(r1, s1) if s1 > 0 else mpq(-r1, -s1)


def _basis_from_rref(red, pivots, ncols, p=None):
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[fc]) % p if p else -row[fc]
        basis.append(v)
    return basis


def _nullspace_exact(rows, ncols):
    red, pivots = rref(rows, ncols) if rows else ([], [])
    basis = _basis_from_rref(red, pivots, ncols)
    return [[mpq(x) for x in v] for v in basis]


def nullspace(rows, ncols: int) -> list[list[mpq]]:
    """Basis of {x : A x = 0}, one vector per free column of the RREF."""
    ints = _integer_rows(rows)
    if not ints:
        return [[mpq(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    best = None          # (pivots, residues modulo M, M)
    prev = None
    for p in _primes():
        red, pivots = _rref_mod(ints, ncols, p)
        vecs = _basis_from_rref(red, pivots, ncols, p)
        if best is None or len(pivots) > len(best[0]):
            best = (pivots, vecs, p)
            prev = None
            continue
        if pivots != best[0]:
            continue      # unlucky prime
        bp, bvecs, M = best
        # CRT combine
        inv = pow(M % p, -1, p)
        comb = [[(a + M * (((b - a) * inv) % p)) for a, b in zip(va, vb)]
                for va, vb in zip(bvecs, vecs)]
        M *= p
        best = (bp, comb, M)
        lifted = []
        ok = True
        for v in comb:
            w = []
            for x in v:
                r = _ratrec(x, M)
                if r is None:
                    ok = False
                    break
                w.append(r)
            if not ok:
                break
            lifted.append(w)
        if not ok:
            continue
        if lifted == prev and _check_kernel(ints, lifted):
            return lifted
        prev = lifted
    return _nullspace_exact(rows, ncols)


def _check_kernel(ints, basis) -> bool:
    for v in basis:
        d = lcm(*(int(x.denominator) for x in v))
        iv = [int(x.numerator) * (d // int(x.denominator)) for x in v]
        for r in ints:
            if sum(a * b for a, b in zip(r, iv) if a and b):
                return False
    return True


def rank(rows, ncols: int) -> int:
    """Exact rank: number of rows minus the dimension of the left kernel.

    The left kernel returned by :func:`nullspace` is verified exactly and
    its size is pinned by a modular rank, so the count is exact.
    """
    if not rows:
        return 0
    cols = [[r[j] for r in rows] for j in range(ncols)]
    return len(rows) - len(nullspace(cols, len(rows)))
