"""Character tables of finite matrix groups and the calculus of class functions.

Class function values live in a cyclotomic field Q(zeta_m) and are stored as
an integer coefficient array ``num`` of shape (classes, phi(m)) over a common
positive denominator ``den``.  All arithmetic is exact.

Tables are computed by the Burnside-Dixon method: common eigenvectors of the
class matrices are split modulo a prime l = 1 (mod exponent), and each value
is lifted from its eigenvalue multiplicities on the cyclic subgroup
generated by a class representative.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt, lcm
from typing import Callable, Sequence

import numpy as np

from . import cyclo
from .cyclo import Cyclotomic, field, imatmul, pointwise_mul
from .errors import DomainError, TableError
from .groups import GroupModel, conjugate_arrays, mat_inv, mat_mul, ResidueMatrix
from .linalg import (column_echelon_mod, hessenberg_charpoly_mod, is_prime, nullspace_mod,
                     primitive_root_mod_prime, roots_mod)

TABLE_FORMAT_VERSION = 1


# -- integer array helpers --------------------------------------------------------

def _absmax(a: np.ndarray) -> int:
    return cyclo._absmax(a)


def _scale(num: np.ndarray, k: int) -> np.ndarray:
    if k == 1:
        return num
    if num.dtype == object or _absmax(num) * abs(k) >= 2**62:
        return num.astype(object) * k
    return num * k


def _add(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if x.dtype == object or y.dtype == object or _absmax(x) + _absmax(y) >= 2**62:
        return x.astype(object) + y.astype(object)
    return x + y


def _shrink(num: np.ndarray) -> np.ndarray:
    if num.dtype == object and (num.size == 0 or _absmax(num) < 2**62):
        return num.astype(np.int64)
    return num


def _gcd_all(num: np.ndarray, start: int) -> int:
    g = start
    if num.dtype != object and num.size:
        g = gcd(g, int(np.gcd.reduce(np.abs(num).ravel())))
    else:
        for v in num.ravel():
            g = gcd(g, int(v))
            if g == 1:
                break
    return g


def _embed(num: np.ndarray, m: int, n: int) -> np.ndarray:
    if m == n:
        return num
    return imatmul(num, cyclo._embed_matrix(m, n))


# -- class functions ----------------------------------------------------------------

class ClassFunction:
    """A Q(zeta_m)-valued function on the conjugacy classes of a GroupModel."""

    __slots__ = ("group", "m", "num", "den")

    def __init__(self, group: GroupModel, m: int, num: np.ndarray, den: int = 1):
        num = np.asarray(num)
        F = field(m)
        if num.shape != (group.num_classes, F.phi):
            raise DomainError(f"value array shape {num.shape} does not match "
                              f"{group.num_classes} classes over Q(zeta_{m})")
        if den <= 0:
            num, den = -num, -den
        g = _gcd_all(num, den)
        if g > 1:
            num = num // g
            den //= g
        self.group, self.m, self.num, self.den = group, m, _shrink(num), int(den)

    # constructors
    @classmethod
    def from_values(cls, group: GroupModel, values: Sequence) -> "ClassFunction":
        vals = [v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v) for v in values]
        if len(vals) != group.num_classes:
            raise DomainError("one value per class required")
        m = 1
        for v in vals:
            m = lcm(m, v.m)
        rows = [v.embed(m).coeffs for v in vals]
        den = 1
        for row in rows:
            for x in row:
                den = lcm(den, x.denominator)
        num = np.array([[int(x * den) for x in row] for row in rows], dtype=object)
        return cls(group, m, num, den)

    @classmethod
    def constant(cls, group: GroupModel, q) -> "ClassFunction":
        q = Fraction(q)
        num = np.zeros((group.num_classes, 1), dtype=np.int64)
        num[:, 0] = q.numerator
        return cls(group, 1, num, q.denominator)

    @classmethod
    def trivial(cls, group: GroupModel) -> "ClassFunction":
        return cls.constant(group, 1)

    @classmethod
    def regular(cls, group: GroupModel) -> "ClassFunction":
        num = np.zeros((group.num_classes, 1), dtype=np.int64)
        num[group.identity_class, 0] = group.order
        return cls(group, 1, num, 1)

    @classmethod
    def zero(cls, group: GroupModel) -> "ClassFunction":
        return cls.constant(group, 0)

    # access
    @property
    def values(self) -> list[Cyclotomic]:
        return [self.value(k) for k in range(self.group.num_classes)]

    def value(self, k: int) -> Cyclotomic:
        return Cyclotomic(self.m, (Fraction(int(v), self.den) for v in self.num[k]))

    def at(self, g: ResidueMatrix) -> Cyclotomic:
        return self.value(self.group.class_index(g))

    @property
    def degree(self) -> Fraction:
        return self.value(self.group.identity_class).rational_part()

    def is_zero(self) -> bool:
        return not np.any(self.num != 0)

    def in_field(self, n: int) -> "ClassFunction":
        if n % self.m:
            raise DomainError(f"Q(zeta_{self.m}) is not inside Q(zeta_{n})")
        return ClassFunction(self.group, n, _embed(self.num, self.m, n), self.den)

    def _check_same_group(self, other: "ClassFunction"):
        if other.group is not self.group:
            raise DomainError(f"class functions on different groups: {self.group!r} vs {other.group!r}")

    def _common(self, other: "ClassFunction"):
        self._check_same_group(other)
        n = lcm(self.m, other.m)
        return n, _embed(self.num, self.m, n), _embed(other.num, other.m, n)

    # arithmetic
    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if isinstance(other, int) and other == 0:
            return self
        n, x, y = self._common(other)
        return ClassFunction(self.group, n, _add(_scale(x, other.den), _scale(y, self.den)),
                             self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "ClassFunction":
        return ClassFunction(self.group, self.m, -self.num, self.den)

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        return self + (-other)

    def __mul__(self, other) -> "ClassFunction":
        if isinstance(other, ClassFunction):
            n, x, y = self._common(other)
            return ClassFunction(self.group, n, pointwise_mul(n, x, y), self.den * other.den)
        if isinstance(other, Cyclotomic):
            return self * ClassFunction.from_values(self.group, [other] * self.group.num_classes)
        q = Fraction(other)
        return ClassFunction(self.group, self.m, _scale(self.num, q.numerator), self.den * q.denominator)

    __rmul__ = __mul__

    def __truediv__(self, q) -> "ClassFunction":
        q = Fraction(q)
        return self * (1 / q)

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, self.m, imatmul(self.num, field(self.m).conj), self.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction) or other.group is not self.group:
            return False
        n, x, y = self._common(other)
        return self.den == other.den and np.array_equal(x, y)

    def __hash__(self):
        return hash((id(self.group), self.den, self.num.tobytes() if self.num.dtype != object else str(self.num)))

    def is_real(self) -> bool:
        return self == self.conjugate()

    def __repr__(self) -> str:
        return f"ClassFunction({self.group.tag}@{self.group.p}^{self.group.N}, m={self.m}, den={self.den})"


# -- basic operations ---------------------------------------------------------------

def _weights(G: GroupModel) -> np.ndarray:
    return G.class_sizes.astype(np.int64)


def inner_product(phi: ClassFunction, psi: ClassFunction) -> Cyclotomic:
    """(1/|G|) sum_g phi(g) conj(psi(g)), computed classwise."""
    n, x, y = phi._common(psi)
    G = phi.group
    F = field(n)
    yc = imatmul(y, F.conj)
    wx = _scale_rows(x, _weights(G))
    s = imatmul(wx.T, yc)  # (phi, phi)
    out = imatmul(s.reshape(1, -1), F.mult_flat)[0]
    den = G.order * phi.den * psi.den
    return Cyclotomic(n, (Fraction(int(v), den) for v in out))


def _scale_rows(x: np.ndarray, w: np.ndarray) -> np.ndarray:
    if x.dtype == object or _absmax(x) * int(w.max()) >= 2**62:
        return x.astype(object) * w.astype(object)[:, None]
    return x * w[:, None]


def norm(phi: ClassFunction) -> Fraction:
    return inner_product(phi, phi).rational_part()


_fusion_cache: dict[tuple[int, int], np.ndarray] = {}


def fusion(H: GroupModel, G: GroupModel) -> np.ndarray:
    """G-class of each H-class."""
    key = (id(H), id(G))
    if key not in _fusion_cache:
        if not H.is_subgroup_of(G):
            raise DomainError(f"{H!r} is not a subgroup of {G!r}")
        reps = tuple(v[H.class_reps] for v in H.elements)
        _fusion_cache[key] = G.classes_of(reps)
    return _fusion_cache[key]


def induce(H: GroupModel, G: GroupModel, phi: ClassFunction) -> ClassFunction:
    """ind_H^G phi(g) = (|C_G(g)|/|H|) * sum over h in H cap class(g) of phi(h)."""
    if phi.group is not H:
        raise DomainError("class function does not live on the subgroup")
    fus = fusion(H, G)
    sized = _scale_rows(phi.num, H.class_sizes.astype(np.int64))
    acc = np.zeros((G.num_classes, sized.shape[1]), dtype=sized.dtype)
    np.add.at(acc, fus, sized)
    acc = _scale_rows(acc, G.centralizer_orders.astype(np.int64))
    return ClassFunction(G, phi.m, acc, phi.den * H.order)


def restrict(G: GroupModel, H: GroupModel, psi: ClassFunction) -> ClassFunction:
    if psi.group is not G:
        raise DomainError("class function does not live on the ambient group")
    return ClassFunction(H, psi.m, psi.num[fusion(H, G)], psi.den)


def pullback(phi: ClassFunction, source: GroupModel,
             hom: Callable[[tuple], tuple]) -> ClassFunction:
    """phi composed with an (assumed) homomorphism source -> phi.group given on arrays."""
    reps = tuple(v[source.class_reps] for v in source.elements)
    target = phi.group.classes_of(hom(reps))
    return ClassFunction(source, phi.m, phi.num[target], phi.den)


def twist(phi: ClassFunction, x: ResidueMatrix, domain: GroupModel | None = None) -> ClassFunction:
    """phi^x(g) = phi(x g x^-1) on ``domain`` (default: phi's own group, which x must normalise)."""
    H = phi.group
    D = domain or H
    if (x.p, x.N) != (H.p, H.N):
        raise DomainError("twisting element at a different level")
    reps = tuple(v[D.class_reps] for v in D.elements)
    conj = conjugate_arrays(reps, x.entries(), H.M)
    idx = H.index_of(conj)
    if np.any(idx < 0):
        raise DomainError(f"x . {D!r} . x^-1 is not inside {H!r}")
    if domain is None:
        # x must normalise H for the result to be a class function on H
        allc = conjugate_arrays(H.elements, x.entries(), H.M)
        if np.any(H.index_of(allc) < 0):
            raise DomainError(f"{x} does not normalise {H!r}")
    return ClassFunction(D, phi.m, phi.num[H.class_of[idx]], phi.den)


_invariants_cache: dict[tuple[int, int, int], np.ndarray] = {}


def invariants_counts(J: GroupModel, A: GroupModel, L: GroupModel) -> np.ndarray:
    """counts[k, c] = #{a in A : l_k a lies in the J-class c}, l_k the L-class representatives."""
    key = (id(J), id(A), id(L))
    if key not in _invariants_cache:
        M = J.M
        if not (A.is_subgroup_of(J) and L.is_subgroup_of(J)):
            raise DomainError("A and L must be subgroups of the group of pi")
        for li in range(L.order):
            l = tuple(int(v[li]) for v in L.elements)
            if np.any(A.index_of(conjugate_arrays(A.elements, l, M)) < 0):
                raise DomainError(f"{L!r} does not normalise {A!r}")
        counts = np.zeros((L.num_classes, J.num_classes), dtype=np.int64)
        for k in range(L.num_classes):
            l = tuple(int(v[L.class_reps[k]]) for v in L.elements)
            counts[k] = np.bincount(J.classes_of(mat_mul(l, A.elements, M)), minlength=J.num_classes)
        _invariants_cache[key] = counts
    return _invariants_cache[key]


def invariants_character(pi: ClassFunction, A: GroupModel, L: GroupModel) -> ClassFunction:
    """Character of L on the A-invariants of pi: l -> (1/|A|) sum_a pi(l a)."""
    counts = invariants_counts(pi.group, A, L)
    return ClassFunction(L, pi.m, imatmul(counts, pi.num), pi.den * A.order)


# -- virtual characters ---------------------------------------------------------------

@dataclass(frozen=True)
class VirtualCharacter:
    """Rational coordinates against the irreducibles of a CharacterTable."""

    table: "CharacterTable"
    coords: tuple[Fraction, ...]

    def is_character(self) -> bool:
        return all(c.denominator == 1 and c >= 0 for c in self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def to_class_function(self) -> ClassFunction:
        return self.table.combine(self.coords)

    def multiplicities(self) -> list[int]:
        if not self.is_integral():
            raise TableError(f"non-integral coordinates {self.coords}")
        return [int(c) for c in self.coords]

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        if other.table is not self.table:
            raise DomainError("virtual characters over different tables")
        return VirtualCharacter(self.table, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return VirtualCharacter(self.table, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, VirtualCharacter) and other.table is self.table
                and other.coords == self.coords)

    def __hash__(self):
        return hash((id(self.table), self.coords))

    def norm(self) -> Fraction:
        return sum((c * c for c in self.coords), Fraction(0))


# -- character tables -------------------------------------------------------------------

class CharacterTable:
    """Ordered irreducible characters of a GroupModel, values in Q(zeta_exponent)."""

    def __init__(self, group: GroupModel, m: int, X: np.ndarray):
        self.group = group
        self.m = m
        self.X = _shrink(np.asarray(X))  # (irreducibles, classes, phi(m))
        self.characters = [ClassFunction(group, m, self.X[i], 1) for i in range(len(self.X))]

    def __len__(self) -> int:
        return len(self.characters)

    def __getitem__(self, i: int) -> ClassFunction:
        return self.characters[i]

    def __iter__(self):
        return iter(self.characters)

    def __repr__(self) -> str:
        return f"CharacterTable({self.group!r}, {len(self)} irreducibles)"

    @cached_property
    def degrees(self) -> list[int]:
        return [int(self.X[i, self.group.identity_class, 0]) for i in range(len(self))]

    @cached_property
    def trivial_index(self) -> int:
        triv = ClassFunction.trivial(self.group)
        return next(i for i, chi in enumerate(self.characters) if chi == triv)

    def index(self, chi: ClassFunction) -> int:
        for i, c in enumerate(self.characters):
            if c == chi:
                return i
        raise KeyError("not an irreducible character of this table")

    def _conj_in(self, n: int) -> np.ndarray:
        cache = self.__dict__.setdefault("_conj_cache", {})
        if n not in cache:
            Xn = _embed(self.X.reshape(-1, self.X.shape[2]), self.m, n)
            cache[n] = imatmul(Xn, field(n).conj).reshape(len(self), self.group.num_classes, -1)
        return cache[n]

    def inner_products(self, phi: ClassFunction) -> list[Cyclotomic]:
        """<phi, chi_i> for every irreducible chi_i."""
        if phi.group is not self.group:
            raise DomainError("class function on a different group")
        n = lcm(phi.m, self.m)
        F = field(n)
        x = _embed(phi.num, phi.m, n)
        cx = self._conj_in(n)  # (irr, r, phi)
        nirr, r, ph = cx.shape
        wx = _scale_rows(x, _weights(self.group))
        s = imatmul(wx.T, cx.transpose(1, 0, 2).reshape(r, nirr * ph))  # (phi, irr*phi)
        s = s.reshape(ph, nirr, ph).transpose(1, 0, 2).reshape(nirr, ph * ph)
        out = imatmul(s, F.mult_flat)
        den = self.group.order * phi.den
        return [Cyclotomic(n, (Fraction(int(v), den) for v in out[i])) for i in range(nirr)]

    def combine(self, coords: Sequence[Fraction]) -> ClassFunction:
        den = 1
        for c in coords:
            den = lcm(den, Fraction(c).denominator)
        ints = np.array([int(Fraction(c) * den) for c in coords], dtype=object)
        flat = self.X.reshape(len(self), -1)
        if _absmax(ints.astype(object)) < 2**40:
            ints = ints.astype(np.int64)
        num = imatmul(ints.reshape(1, -1), flat)[0].reshape(self.group.num_classes, -1)
        return ClassFunction(self.group, self.m, num, den)

    def gram(self) -> np.ndarray:
        """Integer matrix sum_k |C_k| chi_i(g_k) conj chi_j(g_k); must equal |G| * I."""
        return self._pairing(self.X, self._conj_in(self.m), _weights(self.group), axis="rows")

    def column_gram(self) -> np.ndarray:
        """sum_i conj chi_i(g_k) chi_i(g_l); must equal diag(|C_G(g_k)|)."""
        return self._pairing(self._conj_in(self.m), self.X, None, axis="cols")

    def _pairing(self, A: np.ndarray, B: np.ndarray, w, axis: str) -> np.ndarray:
        F = field(self.m)
        nirr, r, ph = A.shape
        if axis == "rows":
            left = _scale_rows(A.transpose(1, 0, 2).reshape(r, nirr * ph), w)  # (r, irr*ph)
            right = B.transpose(1, 0, 2).reshape(r, nirr * ph)
            s = imatmul(left.T, right)  # (irr*ph, irr*ph)
            n = nirr
        else:
            left = A.transpose(0, 1, 2).reshape(nirr, r * ph)
            right = B.reshape(nirr, r * ph)
            s = imatmul(left.T, right)  # (r*ph, r*ph)
            n = r
        s = s.reshape(n, ph, n, ph).transpose(0, 2, 1, 3).reshape(n * n, ph * ph)
        out = imatmul(s, F.mult_flat).reshape(n, n, ph)
        if np.any(out[:, :, 1:] != 0):
            raise TableError("orthogonality pairing produced irrational entries")
        return out[:, :, 0]

    def check_orthogonality(self) -> tuple[bool, bool]:
        G = self.group
        rows = np.array_equal(self.gram(), G.order * np.eye(len(self), dtype=np.int64))
        cols = np.array_equal(self.column_gram(), np.diag(G.centralizer_orders.astype(np.int64)))
        return rows, cols

    # -- serialization ---------------------------------------------------------
    def to_json(self, code_version: str = "") -> str:
        G = self.group
        flat = self.X.reshape(-1, self.X.shape[2])
        forms = cyclo.minimal_forms(self.m, flat)
        values = [{"conductor": d, "coeffs": [[c, 1] for c in coords]} for d, coords in forms]
        r = G.num_classes
        doc = {
            "format": "sl2parahoric-character-table",
            "format_version": TABLE_FORMAT_VERSION,
            "code_version": code_version,
            "p": G.p, "N": G.N, "tag": G.tag, "order": G.order, "class_count": r,
            "conductor": self.m,
            "class_representatives": [list(G.rep(k).entries()) for k in range(r)],
            "values": [values[i * r:(i + 1) * r] for i in range(len(self))],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, group: GroupModel, text: str) -> "CharacterTable":
        doc = json.loads(text)
        header = (doc["p"], doc["N"], doc["tag"], doc["order"], doc["class_count"])
        if header != (group.p, group.N, group.tag, group.order, group.num_classes):
            raise TableError(f"cache header {header} does not match {group!r}")
        reps = [list(group.rep(k).entries()) for k in range(group.num_classes)]
        if doc["class_representatives"] != reps:
            raise TableError("cached class representatives differ from enumeration")
        m = doc["conductor"]
        X = np.zeros((len(doc["values"]), group.num_classes, field(m).phi), dtype=np.int64)
        for i, row in enumerate(doc["values"]):
            for k, val in enumerate(row):
                v = Cyclotomic.from_json(val).embed(m)
                if any(c.denominator != 1 for c in v.coeffs):
                    raise TableError("non-integral cached character value")
                X[i, k] = [int(c) for c in v.coeffs]
        return cls(group, m, X)


def decompose(phi: ClassFunction, table: CharacterTable) -> VirtualCharacter:
    """Coordinates <phi, chi_i>; the reconstruction is checked exactly."""
    coords = []
    for i, ip in enumerate(table.inner_products(phi)):
        if not ip.is_rational():
            raise TableError(f"coordinate {i} of the decomposition is not rational: {ip!r}")
        coords.append(ip.coeffs[0])
    vc = VirtualCharacter(table, tuple(coords))
    if vc.to_class_function() != phi:
        raise TableError("class function is not in the span of the table (table bug)")
    return vc


def is_character(phi: ClassFunction, table: CharacterTable) -> bool:
    try:
        return decompose(phi, table).is_character()
    except TableError:
        return False


# -- Burnside-Dixon --------------------------------------------------------------------

def _dixon_primes(order: int, exponent: int):
    ell = exponent + 1
    bound = 2 * isqrt(order) + 2
    while True:
        if ell > bound and is_prime(ell) and order % ell:
            yield ell
        ell += exponent


def _class_matrix(G: GroupModel, j: int, ell: int) -> np.ndarray:
    """(M_j)[k, l] = #{x in C_j : x^-1 z_l in C_k}, reduced mod ell."""
    M, r = G.M, G.num_classes
    members = np.nonzero(G.class_of == j)[0]
    xinv = mat_inv(tuple(v[members] for v in G.elements), M)
    reps = tuple(v[G.class_reps] for v in G.elements)
    xi = tuple(x[:, None] for x in xinv)
    zl = tuple(z[None, :] for z in reps)
    ks = G.classes_of(tuple(a.ravel() for a in mat_mul(xi, zl, M))).reshape(len(members), r)
    out = np.zeros((r, r), dtype=np.int64)
    for l in range(r):
        out[:, l] = np.bincount(ks[:, l], minlength=r)
    return out % ell


def _split_eigenspaces(G: GroupModel, ell: int) -> list[np.ndarray]:
    r = G.num_classes
    spaces = [np.eye(r, dtype=np.int64)]
    order = sorted(range(r), key=lambda j: (int(G.class_sizes[j]), j))
    for j in order:
        if all(S.shape[1] == 1 for S in spaces):
            break
        Mj = None
        new: list[np.ndarray] = []
        for S in spaces:
            d = S.shape[1]
            if d == 1:
                new.append(S)
                continue
            if Mj is None:
                Mj = _class_matrix(G, j, ell)
            S, piv = column_echelon_mod(S, ell)
            A = ((Mj @ S) % ell)[piv, :]
            if np.array_equal(A, A[0, 0] * np.eye(d, dtype=np.int64)):
                new.append(S)
                continue
            roots = roots_mod(hessenberg_charpoly_mod(A, ell), ell)
            total = 0
            for lam in roots:
                Nsp = nullspace_mod((A - lam * np.eye(d, dtype=np.int64)) % ell, ell)
                total += Nsp.shape[1]
                new.append((S @ Nsp) % ell)
            if total != d:
                raise TableError(f"class matrix {j} not diagonalisable mod {ell}")
        spaces = new
    if any(S.shape[1] != 1 for S in spaces):
        raise TableError("class matrices failed to split the centre")
    return spaces


def _dixon(G: GroupModel, ell: int) -> np.ndarray:
    r, n, e = G.num_classes, G.order, G.exponent
    spaces = _split_eigenspaces(G, ell)
    idc = G.identity_class
    inv_size = np.array([pow(int(s), -1, ell) for s in G.class_sizes], dtype=np.int64)
    invc = G.inverse_classes
    chis = []
    for S in spaces:
        v = S[:, 0] % ell
        if v[idc] == 0:
            raise TableError("central character vanishes on the identity class")
        omega = v * pow(int(v[idc]), -1, ell) % ell
        tot = int(np.sum(omega * omega[invc] % ell * inv_size % ell) % ell)
        if tot == 0:
            raise TableError("degenerate central character")
        d2 = n * pow(tot, -1, ell) % ell
        deg = next((d for d in range(1, isqrt(n) + 1) if d * d % ell == d2), None)
        if deg is None:
            raise TableError(f"no degree with square {d2} mod {ell}")
        chis.append((deg, deg * omega % ell * inv_size % ell))
    zeta_e = pow(primitive_root_mod_prime(ell), (ell - 1) // e, ell)
    F = field(e)
    X = np.zeros((r, r, F.phi), dtype=np.int64)
    vals_mod = np.array([c for _, c in chis], dtype=np.int64)  # (irr, classes)
    degs = np.array([d for d, _ in chis], dtype=np.int64)
    for k in range(r):
        o = int(G.rep_orders[k])
        pw = G.power_classes[k]
        zo = pow(zeta_e, e // o, ell)
        ts = np.arange(o)
        # Z[t, s] = zo^(-t s)
        Z = np.array([[pow(zo, (-t * s) % o, ell) for s in range(o)] for t in range(o)], dtype=np.int64)
        V = vals_mod[:, pw]  # (irr, o)
        mult = (V @ Z.T) % ell * pow(o, -1, ell) % ell  # (irr, o)
        if np.any(mult > degs[:, None]) or not np.array_equal(mult.sum(axis=1), degs):
            raise TableError(f"eigenvalue multiplicities out of range at class {k} mod {ell}")
        X[:, k, :] = mult @ F.reduce[(ts * (e // o)) % e]
    return X


def character_table(G: GroupModel, max_prime_attempts: int = 4) -> CharacterTable:
    """Complete, ordered character table of G (ascending degree, then values)."""
    last: Exception | None = None
    for attempt, ell in enumerate(_dixon_primes(G.order, G.exponent)):
        if attempt >= max_prime_attempts:
            break
        try:
            X = _dixon(G, ell)
            break
        except TableError as exc:  # retry with the next admissible prime
            last = exc
    else:  # pragma: no cover - generator is infinite
        raise TableError("prime search exhausted")
    if last is not None and attempt >= max_prime_attempts:
        raise TableError(f"Dixon lifting failed for {G!r}: {last}")
    keys = [(int(X[i, G.identity_class, 0]), tuple(X[i].ravel().tolist())) for i in range(len(X))]
    order = sorted(range(len(X)), key=lambda i: keys[i])
    table = CharacterTable(G, G.exponent, X[order])
    if sum(d * d for d in table.degrees) != G.order:
        raise TableError(f"sum of squared degrees {sum(d * d for d in table.degrees)} != {G.order}")
    return table
