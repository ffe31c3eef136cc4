"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis of Q[x]/(Phi_m(x)), so a value of
conductor ``m`` is a length-``phi(m)`` vector of rationals.  The
:class:`CycloField` helper carries the integer matrices used for bulk
(numpy) arithmetic elsewhere in the package; :class:`Cyclotomic` is the
scalar type used at API boundaries and in serialization.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    result, m, f = n, n, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1]
        out[i] = q
        if q:
            for j, c in enumerate(den):
                num[i + j] -= q * c
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


class CycloField:
    """Integer structure matrices for Q(zeta_m) in the power basis.

    ``reduce[j]`` is x^j mod Phi_m for 0 <= j < m, ``mult[a, b]`` the
    product of basis vectors a and b, ``conj`` complex conjugation.
    """

    def __init__(self, m: int):
        if m < 1:
            raise ValueError(f"conductor must be >= 1, got {m}")
        self.m = m
        self.phi = euler_phi(m)
        poly = cyclotomic_poly(m)
        phi = self.phi
        red = np.zeros((m, phi), dtype=np.int64)
        cur = np.zeros(phi + 1, dtype=np.int64)
        cur[0] = 1
        for j in range(m):
            red[j] = cur[:phi]
            # multiply by x, then eliminate x^phi using the monic Phi_m
            cur = np.roll(cur, 1)
            top = cur[phi]
            if top:
                cur[: phi + 1] -= top * np.array(poly, dtype=np.int64)
        self.reduce = red
        idx = (np.arange(phi)[:, None] + np.arange(phi)[None, :]) % m
        self.mult = red[idx]  # (phi, phi, phi)
        self.mult_flat = self.mult.reshape(phi * phi, phi)
        self.conj = red[(-np.arange(phi)) % m]  # row a: conj of x^a

    def embed_matrix(self, n: int) -> np.ndarray:
        """Matrix sending Q(zeta_m)-coefficients to Q(zeta_n) for m | n."""
        return _embed_matrix(self.m, n)

    def __repr__(self) -> str:
        return f"CycloField({self.m})"


@lru_cache(maxsize=None)
def field(m: int) -> CycloField:
    return CycloField(m)


@lru_cache(maxsize=None)
def _embed_matrix(m: int, n: int) -> np.ndarray:
    if n % m:
        raise ValueError(f"Q(zeta_{m}) does not embed in Q(zeta_{n})")
    src, dst = field(m), field(n)
    step = n // m
    return dst.reduce[(np.arange(src.phi) * step) % n]


# -- exact integer matrix products -----------------------------------------

def _absmax(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


def imatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of integer matrices.

    Uses float64 BLAS when every partial sum provably stays below 2**53,
    int64 when below 2**63, and Python integers otherwise.
    """
    inner = a.shape[-1]
    bound = _absmax(a) * _absmax(b) * max(inner, 1)
    if bound < 2**53:
        out = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
        return np.rint(out).astype(np.int64)
    if bound < 2**63:
        return np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)
    return np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)


def pointwise_mul(m: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Row-wise product of (k, phi) coefficient arrays in Q(zeta_m)."""
    F = field(m)
    if x.dtype == object or y.dtype == object or _absmax(x) * _absmax(y) >= 2**62:
        x, y = x.astype(object), y.astype(object)
    outer = x[:, :, None] * y[:, None, :]
    return imatmul(outer.reshape(len(x), F.phi * F.phi), F.mult_flat)


# -- scalar type --------------------------------------------------------------

class Cyclotomic:
    """An exact element of Q(zeta_m).

    >>> z = Cyclotomic.root_of_unity(3, 1)
    >>> 1 + z + z * z == 0
    True
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable):
        F = field(m)
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != F.phi:
            raise ValueError(f"expected {F.phi} coefficients for conductor {m}, got {len(cs)}")
        self.m = m
        self.coeffs = cs

    # constructors
    @classmethod
    def rational(cls, q, m: int = 1) -> "Cyclotomic":
        F = field(m)
        return cls(m, [Fraction(q)] + [Fraction(0)] * (F.phi - 1))

    @classmethod
    def root_of_unity(cls, m: int, k: int = 1) -> "Cyclotomic":
        F = field(m)
        return cls(m, (int(v) for v in F.reduce[k % m]))

    @classmethod
    def from_exponents(cls, m: int, counts: Sequence) -> "Cyclotomic":
        """Sum of counts[t] * zeta_m**t."""
        F = field(m)
        acc = [Fraction(0)] * F.phi
        for t, c in enumerate(counts):
            if c:
                row = F.reduce[t % m]
                for j in range(F.phi):
                    if row[j]:
                        acc[j] += Fraction(c) * int(row[j])
        return cls(m, acc)

    # structure
    def embed(self, n: int) -> "Cyclotomic":
        if n == self.m:
            return self
        E = _embed_matrix(self.m, n)
        out = [Fraction(0)] * field(n).phi
        for c, row in zip(self.coeffs, E):
            if c:
                for j in np.nonzero(row)[0]:
                    out[j] += c * int(row[j])
        return Cyclotomic(n, out)

    def _coerce(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        return to_common_conductor(self, other)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_part(self) -> Fraction:
        """The value as a rational; raises if it is not one."""
        if not self.is_rational():
            raise ArithmeticError(f"{self!r} is not rational")
        return self.coeffs[0]

    def conjugate(self) -> "Cyclotomic":
        F = field(self.m)
        out = [Fraction(0)] * F.phi
        for c, row in zip(self.coeffs, F.conj):
            if c:
                for j in np.nonzero(row)[0]:
                    out[j] += c * int(row[j])
        return Cyclotomic(self.m, out)

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        # solve x * y = 1 via the multiplication-by-x matrix
        F = field(self.m)
        n = F.phi
        mat = [[Fraction(0)] * n for _ in range(n)]
        for a, c in enumerate(self.coeffs):
            if c:
                for b in range(n):
                    row = F.mult[a, b]
                    for k in np.nonzero(row)[0]:
                        mat[k][b] += c * int(row[k])
        rhs = [Fraction(1)] + [Fraction(0)] * (n - 1)
        from .linalg import solve_rational
        return Cyclotomic(self.m, solve_rational(mat, rhs))

    def minimal(self) -> "Cyclotomic":
        """The same value expressed over the smallest conductor containing it."""
        d, coords = minimal_form(self.m, self.coeffs)
        return Cyclotomic(d, coords)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))

    # serialization
    def to_json(self) -> dict:
        small = self.minimal()
        return {
            "conductor": small.m,
            "coeffs": [[c.numerator, c.denominator] for c in small.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Cyclotomic":
        return cls(obj["conductor"], (Fraction(n, d) for n, d in obj["coeffs"]))

    # arithmetic
    def __add__(self, other):
        x, y = self._coerce(other)
        return Cyclotomic(x.m, (a + b for a, b in zip(x.coeffs, y.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, (-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            q = Fraction(other)
            return Cyclotomic(self.m, (a * q for a in self.coeffs))
        x, y = self._coerce(other)
        F = field(x.m)
        out = [Fraction(0)] * F.phi
        for a, ca in enumerate(x.coeffs):
            if not ca:
                continue
            for b, cb in enumerate(y.coeffs):
                if not cb:
                    continue
                prod = ca * cb
                row = F.mult[a, b]
                for k in np.nonzero(row)[0]:
                    out[k] += prod * int(row[k])
        return Cyclotomic(x.m, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Cyclotomic):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.m, (a / q for a in self.coeffs))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.rational(1, self.m)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.rational(other)
            except (TypeError, ValueError):
                return NotImplemented
        x, y = to_common_conductor(self, other)
        return x.coeffs == y.coeffs

    def __hash__(self) -> int:
        small = self.minimal()
        return hash((small.m, small.coeffs))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyclotomic({self.coeffs[0]})"
        terms = [f"{c}*z{self.m}^{k}" for k, c in enumerate(self.coeffs) if c]
        return "Cyclotomic(" + " + ".join(terms) + ")"


def root_of_unity(m: int, k: int = 1) -> Cyclotomic:
    return Cyclotomic.root_of_unity(m, k)


def to_common_conductor(x: Cyclotomic, y: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic]:
    n = lcm(x.m, y.m)
    return x.embed(n), y.embed(n)


def conjugate(x: Cyclotomic) -> Cyclotomic:
    return x.conjugate()


def rational_part(x: Cyclotomic) -> Fraction:
    return x.rational_part()


# -- conductor minimisation -------------------------------------------------------

@lru_cache(maxsize=None)
def galois_matrix(m: int, u: int) -> np.ndarray:
    """Matrix of zeta_m -> zeta_m**u acting on coefficient rows."""
    F = field(m)
    return F.reduce[(u * np.arange(F.phi)) % m]


@lru_cache(maxsize=None)
def _descent(d: int, m: int):
    """Fixing automorphisms of Q(zeta_m)/Q(zeta_d) and a coordinate extractor.

    Returns (units u = 1 mod d, rows R, inverse) such that for x in
    Q(zeta_d) embedded in Q(zeta_m), coords = inverse @ x[R].
    """
    from .linalg import rref
    units = [u for u in range(1, m) if gcd(u, m) == 1 and u % d == 1 and u != 1]
    E = _embed_matrix(d, m)  # (phi_d, phi_m)
    Et = E.T.tolist()
    _, rows = rref(E.tolist())  # independent columns of E = independent rows of E^T
    sq = [[Fraction(Et[r][c]) for c in range(E.shape[0])] for r in rows]
    n = len(rows)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(sq)]
    red, _ = rref(aug)
    inverse = [row[n:] for row in red]
    return units, rows, inverse


def minimal_form(m: int, row: Sequence[Fraction]) -> tuple[int, list[Fraction]]:
    """(d, coords) with d the least conductor whose field contains the value."""
    vec = np.array([Fraction(x) for x in row], dtype=object)
    if not any(vec[1:]):
        return 1, [vec[0]]
    for d in divisors(m)[1:-1]:
        units, rows, inverse = _descent(d, m)
        if all(np.array_equal(vec @ galois_matrix(m, u).astype(object), vec) for u in units):
            sub = [vec[r] for r in rows]
            coords = [sum((c * s for c, s in zip(inv_row, sub)), Fraction(0)) for inv_row in inverse]
            return d, coords
    return m, list(vec)


def minimal_forms(m: int, num: np.ndarray) -> list[tuple[int, list[int]]]:
    """Vectorised :func:`minimal_form` for integer coefficient rows (k, phi(m))."""
    num = np.asarray(num)
    k = len(num)
    out: list[tuple[int, list[int]] | None] = [None] * k
    todo = np.ones(k, dtype=bool)
    rational = ~np.any(num[:, 1:] != 0, axis=1) if num.shape[1] > 1 else np.ones(k, dtype=bool)
    for i in np.nonzero(rational)[0]:
        out[i] = (1, [int(num[i, 0])])
    todo &= ~rational
    for d in divisors(m)[1:-1]:
        if not todo.any():
            break
        units, rows, inverse = _descent(d, m)
        fixed = todo.copy()
        for u in units:
            fixed &= np.all(imatmul(num, galois_matrix(m, u)) == num, axis=1)
        idx = np.nonzero(fixed)[0]
        if not len(idx):
            continue
        den = 1
        for row in inverse:
            for x in row:
                den = lcm(den, x.denominator)
        inv_int = np.array([[int(x * den) for x in row] for row in inverse], dtype=np.int64)
        coords = imatmul(num[idx][:, rows], inv_int.T)
        for j, i in enumerate(idx):
            vals = coords[j]
            if any(int(v) % den for v in vals):
                raise ArithmeticError("non-integral descent of an algebraic integer")
            out[i] = (d, [int(v) // den for v in vals])
        todo[idx] = False
    for i in np.nonzero(todo)[0]:
        out[i] = (m, [int(v) for v in num[i]])
    return out  # type: ignore[return-value]
