"""Exact linear algebra: over Q (fraction-free) and over prime fields F_l."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np


# -- over Q -------------------------------------------------------------------

def _integer_rows(mat: Sequence[Sequence]) -> list[list[int]]:
    rows = []
    for row in mat:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(x * den) for x in row])
    return rows


def rank(mat: Sequence[Sequence]) -> int:
    """Rank over Q by Bareiss fraction-free elimination."""
    a = _integer_rows(mat)
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        for i in range(r + 1, nrows):
            f = a[i][col]
            row_i, row_r = a[i], a[r]
            a[i] = [(p * row_i[j] - f * row_r[j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(mat: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    a = [[Fraction(x) for x in row] for row in mat]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return a, pivots


def nullspace(mat: Sequence[Sequence], ncols: int | None = None) -> list[list[int]]:
    """Basis of the right kernel, as primitive integer vectors."""
    if not mat:
        n = ncols or 0
        return [[int(i == j) for j in range(n)] for i in range(n)]
    a, pivots = rref(mat)
    n = len(a[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(a, pivots):
            v[pc] = -row[f]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in v]
        g = 0
        for x in ints:
            g = gcd(g, x)
        basis.append([x // g for x in ints])
    return basis


def solve_rational_or_none(mat: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Some solution x of mat @ x = rhs, or None if inconsistent."""
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    a, pivots = rref(aug)
    n = len(aug[0]) - 1
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(a, pivots):
        x[pc] = row[n]
    return x


def solve_rational(mat: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    x = solve_rational_or_none(mat, rhs)
    if x is None:
        raise ArithmeticError("inconsistent linear system")
    return x


# -- over F_l -------------------------------------------------------------------

def rref_mod(a: np.ndarray, ell: int) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.int64) % ell
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, col])[0]
        if not len(nz):
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, col]), -1, ell) % ell
        f = a[:, col].copy()
        f[r] = 0
        a = (a - f[:, None] * a[r][None, :]) % ell
        pivots.append(col)
        r += 1
    return a, pivots


def nullspace_mod(a: np.ndarray, ell: int) -> np.ndarray:
    """Columns spanning the right kernel of ``a`` over F_ell."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    r, pivots = rref_mod(a, ell)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-r[i, f]) % ell
    return basis


def column_echelon_mod(s: np.ndarray, ell: int) -> tuple[np.ndarray, list[int]]:
    """Column basis of the span of ``s`` normalised to be the identity on pivot rows."""
    r, pivots = rref_mod(np.asarray(s).T, ell)
    return r[: len(pivots)].T.copy(), pivots


def hessenberg_charpoly_mod(a: np.ndarray, ell: int) -> list[int]:
    """Characteristic polynomial det(x - a), coefficients lowest degree first."""
    h = np.array(a, dtype=np.int64) % ell
    n = h.shape[0]
    for k in range(n - 2):
        nz = np.nonzero(h[k + 1:, k])[0]
        if not len(nz):
            continue
        piv = k + 1 + int(nz[0])
        if piv != k + 1:
            h[[piv, k + 1]] = h[[k + 1, piv]]
            h[:, [piv, k + 1]] = h[:, [k + 1, piv]]
        inv = pow(int(h[k + 1, k]), -1, ell)
        for i in range(k + 2, n):
            f = int(h[i, k]) * inv % ell
            if f:
                h[i] = (h[i] - f * h[k + 1]) % ell
                h[:, k + 1] = (h[:, k + 1] + f * h[:, i]) % ell
    polys: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        hmm = int(h[m - 1, m - 1])
        prev = polys[m - 1]
        cur = [0] + prev  # x * p_{m-1}
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - hmm * c) % ell
        prod = 1
        for i in range(1, m):
            prod = prod * int(h[m - i, m - i - 1]) % ell
            coef = int(h[m - i - 1, m - 1]) * prod % ell
            if coef:
                for j, c in enumerate(polys[m - i - 1]):
                    cur[j] = (cur[j] - coef * c) % ell
        polys.append(cur)
    return polys[n]


def roots_mod(poly: Sequence[int], ell: int) -> list[int]:
    xs = np.arange(ell, dtype=np.int64)
    acc = np.zeros(ell, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * xs + c) % ell
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def primitive_root_mod_prime(ell: int) -> int:
    n = ell - 1
    factors, m, f = [], n, 2
    while f * f <= m:
        if m % f == 0:
            factors.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        factors.append(m)
    for g in range(2, ell):
        if all(pow(g, n // q, ell) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root mod {ell}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True
