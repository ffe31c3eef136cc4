"""Finite matrix groups SL2(Z/p^N) and the subgroups attached to an edge of the tree.

Every subgroup is cut out of SL2(Z/p^N) by a congruence predicate and
enumerated by a direct scan of (a, b, c, d) tuples.  Elements are kept as
four parallel int64 arrays sorted by the packed key ((a*M + b)*M + c)*M + d,
so array order is lexicographic order on (a, b, c, d).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache

import numpy as np

from .errors import DomainError, ResourceBudgetError

DEFAULT_MAX_ELEMENTS = 100_000


# -- residues -------------------------------------------------------------------

@dataclass(frozen=True)
class ResidueInt:
    p: int
    N: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def _other(self, other) -> int:
        if isinstance(other, ResidueInt):
            if (other.p, other.N) != (self.p, self.N):
                raise DomainError("residues at different levels")
            return other.value
        return int(other)

    def __add__(self, other):
        return ResidueInt(self.p, self.N, self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ResidueInt(self.p, self.N, self.value - self._other(other))

    def __neg__(self):
        return ResidueInt(self.p, self.N, -self.value)

    def __mul__(self, other):
        return ResidueInt(self.p, self.N, self.value * self._other(other))

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def inverse(self) -> "ResidueInt":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self.value} is not a unit mod {self.p}^{self.N}")
        return ResidueInt(self.p, self.N, pow(self.value, -1, self.modulus))

    def valuation(self) -> int:
        v, k = self.value, 0
        if v == 0:
            return self.N
        while v % self.p == 0:
            v //= self.p
            k += 1
        return k

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class ResidueMatrix:
    """A determinant-one 2x2 matrix over Z/p^N."""

    p: int
    N: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        M = self.p**self.N
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % M)
        if (self.a * self.d - self.b * self.c) % M != 1:
            raise DomainError(f"determinant of {self.entries()} is not 1 mod {M}")

    @property
    def modulus(self) -> int:
        return self.p**self.N

    @classmethod
    def identity(cls, p: int, N: int) -> "ResidueMatrix":
        return cls(p, N, 1, 0, 0, 1)

    @classmethod
    def weyl(cls, p: int, N: int) -> "ResidueMatrix":
        return cls(p, N, 0, -1, 1, 0)

    @classmethod
    def diag(cls, p: int, N: int, x: int) -> "ResidueMatrix":
        M = p**N
        return cls(p, N, x, 0, 0, pow(x, -1, M))

    @classmethod
    def upper(cls, p: int, N: int, x: int) -> "ResidueMatrix":
        return cls(p, N, 1, x, 0, 1)

    @classmethod
    def lower(cls, p: int, N: int, y: int) -> "ResidueMatrix":
        return cls(p, N, 1, 0, y, 1)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def residues(self) -> tuple[ResidueInt, ...]:
        return tuple(ResidueInt(self.p, self.N, v) for v in self.entries())

    @property
    def key(self) -> int:
        M = self.modulus
        return ((self.a * M + self.b) * M + self.c) * M + self.d

    def __mul__(self, other: "ResidueMatrix") -> "ResidueMatrix":
        if (other.p, other.N) != (self.p, self.N):
            raise DomainError("matrices at different levels")
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return ResidueMatrix(self.p, self.N, a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "ResidueMatrix":
        return ResidueMatrix(self.p, self.N, self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> "ResidueMatrix":
        base = self if k >= 0 else self.inverse()
        out = ResidueMatrix.identity(self.p, self.N)
        k = abs(k)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def order(self) -> int:
        one = ResidueMatrix.identity(self.p, self.N)
        g, k = self, 1
        while g != one:
            g = g * self
            k += 1
        return k

    def reduce(self, level: int) -> "ResidueMatrix":
        if level > self.N:
            raise DomainError("cannot raise precision by reduction")
        return ResidueMatrix(self.p, level, *self.entries())

    def __repr__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]] mod {self.p}^{self.N}"


# -- vectorised element arithmetic ---------------------------------------------

def mat_mul(x, y, M: int):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % M, (a * f + b * h) % M, (c * e + d * g) % M, (c * f + d * h) % M)


def mat_inv(x, M: int):
    a, b, c, d = x
    return (d % M, (-b) % M, (-c) % M, a % M)


def pack(x, M: int):
    a, b, c, d = x
    return ((a * M + b) * M + c) * M + d


@lru_cache(maxsize=None)
def inverse_table(M: int) -> np.ndarray:
    """inv[x] = x^{-1} mod M for units, 0 elsewhere."""
    inv = np.zeros(M, dtype=np.int64)
    for x in range(M):
        try:
            inv[x] = pow(x, -1, M)
        except ValueError:
            pass
    return inv


# -- subgroup tags --------------------------------------------------------------

class Kind(str, Enum):
    FULL = "full"                    # K = SL2(O)
    IWAHORI_UPPER = "iwahori"        # J: c = 0 mod p
    IWAHORI_LOWER = "iwahori_lower"  # b = 0 mod p
    UNIP_UPPER = "unip_upper"        # U
    UNIP_LOWER = "unip_lower"        # Ubar: c = 0 mod p
    DIAGONAL = "diagonal"            # L
    CONGRUENCE = "congruence"        # J_c: c = 0 mod p^cond
    IWAHORI_INTERSECTION = "iwahori_meet"  # J cap J^w
    LOWER_BOREL = "lower_borel"      # L Ubar
    TRIVIAL = "trivial"


def _predicate(kind: Kind, p: int, M: int, cond: int, a, b, c, d):
    if kind is Kind.FULL:
        return np.ones_like(a, dtype=bool)
    if kind is Kind.IWAHORI_UPPER:
        return c % p == 0
    if kind is Kind.IWAHORI_LOWER:
        return b % p == 0
    if kind is Kind.UNIP_UPPER:
        return (a == 1) & (d == 1) & (c == 0)
    if kind is Kind.UNIP_LOWER:
        return (a == 1) & (d == 1) & (b == 0) & (c % p == 0)
    if kind is Kind.DIAGONAL:
        return (b == 0) & (c == 0)
    if kind is Kind.CONGRUENCE:
        return c % (p**cond) == 0
    if kind is Kind.IWAHORI_INTERSECTION:
        return (b % p == 0) & (c % p == 0)
    if kind is Kind.LOWER_BOREL:
        return (b == 0) & (c % p == 0)
    if kind is Kind.TRIVIAL:
        return (a == 1) & (b == 0) & (c == 0) & (d == 1)
    raise DomainError(f"unknown subgroup kind {kind!r}")


def full_order(p: int, N: int) -> int:
    return p ** (3 * N - 2) * (p * p - 1)


class GroupModel:
    """An enumerated subgroup of SL2(Z/p^N) with its conjugacy classes.

    Built by :func:`enumerate_group`; treat as immutable.
    """

    def __init__(self, p: int, N: int, kind: Kind, cond: int, elems: tuple[np.ndarray, ...]):
        self.p, self.N, self.kind, self.cond = p, N, Kind(kind), cond
        self.M = p**N
        self.a, self.b, self.c, self.d = elems
        self.keys = pack(elems, self.M)
        self.order = len(self.keys)

    @property
    def tag(self) -> str:
        if self.kind is Kind.CONGRUENCE:
            return f"{self.kind.value}{self.cond}"
        return self.kind.value

    def __repr__(self) -> str:
        return f"GroupModel({self.tag}, p={self.p}, N={self.N}, order={self.order})"

    @property
    def elements(self) -> tuple[np.ndarray, ...]:
        return (self.a, self.b, self.c, self.d)

    def element(self, i: int) -> ResidueMatrix:
        return ResidueMatrix(self.p, self.N, int(self.a[i]), int(self.b[i]), int(self.c[i]), int(self.d[i]))

    def index_of(self, x) -> np.ndarray:
        """Element indices of the arrays ``x``; -1 where not in the group."""
        keys = np.asarray(pack(x, self.M))
        pos = np.searchsorted(self.keys, keys)
        pos = np.minimum(pos, self.order - 1)
        return np.where(self.keys[pos] == keys, pos, -1)

    def index(self, g: ResidueMatrix) -> int:
        i = int(self.index_of(tuple(np.array([v]) for v in g.entries()))[0])
        if i < 0:
            raise DomainError(f"{g} is not in {self!r}")
        return i

    def __contains__(self, g: ResidueMatrix) -> bool:
        if (g.p, g.N) != (self.p, self.N):
            return False
        return int(self.index_of(tuple(np.array([v]) for v in g.entries()))[0]) >= 0

    def is_subgroup_of(self, other: "GroupModel") -> bool:
        if (self.p, self.N) != (other.p, other.N):
            return False
        return bool(np.all(other.index_of(self.elements) >= 0))

    # -- conjugacy classes --------------------------------------------------

    @cached_property
    def _classes(self):
        n, M = self.order, self.M
        g_all = self.elements
        g_inv = mat_inv(g_all, M)
        class_of = np.full(n, -1, dtype=np.int64)
        reps: list[int] = []
        for i in range(n):
            if class_of[i] >= 0:
                continue
            gi = tuple(int(v[i]) for v in g_all)
            conj = mat_mul(mat_mul(g_all, gi, M), g_inv, M)
            idx = self.index_of(conj)
            class_of[idx] = len(reps)
            reps.append(i)
        reps_arr = np.array(reps, dtype=np.int64)
        sizes = np.bincount(class_of, minlength=len(reps))
        return class_of, reps_arr, sizes

    @property
    def class_of(self) -> np.ndarray:
        return self._classes[0]

    @property
    def class_reps(self) -> np.ndarray:
        """Element index of the (lexicographically least) representative of each class."""
        return self._classes[1]

    @property
    def class_sizes(self) -> np.ndarray:
        return self._classes[2]

    @property
    def num_classes(self) -> int:
        return len(self.class_reps)

    @cached_property
    def centralizer_orders(self) -> np.ndarray:
        return self.order // self.class_sizes

    def rep(self, k: int) -> ResidueMatrix:
        return self.element(int(self.class_reps[k]))

    def classes_of(self, x) -> np.ndarray:
        idx = self.index_of(x)
        if np.any(idx < 0):
            raise DomainError(f"elements outside {self!r}")
        return self.class_of[idx]

    def class_index(self, g: ResidueMatrix) -> int:
        return int(self.class_of[self.index(g)])

    @cached_property
    def identity_class(self) -> int:
        return self.class_index(ResidueMatrix.identity(self.p, self.N))

    @cached_property
    def inverse_classes(self) -> np.ndarray:
        reps = tuple(v[self.class_reps] for v in self.elements)
        return self.classes_of(mat_inv(reps, self.M))

    @cached_property
    def rep_orders(self) -> np.ndarray:
        return np.array([self.rep(k).order() for k in range(self.num_classes)], dtype=np.int64)

    @cached_property
    def exponent(self) -> int:
        from math import lcm
        return lcm(*(int(o) for o in self.rep_orders)) if self.num_classes else 1

    @cached_property
    def power_classes(self) -> list[np.ndarray]:
        """power_classes[k][s] = class of rep_k ** s for 0 <= s < order(rep_k)."""
        out = []
        M = self.M
        for k in range(self.num_classes):
            g = tuple(np.array([int(v[self.class_reps[k]])]) for v in self.elements)
            o = int(self.rep_orders[k])
            cur = tuple(np.array([v]) for v in (1, 0, 0, 1))
            pts = [cur]
            for _ in range(o - 1):
                cur = mat_mul(cur, g, M)
                pts.append(cur)
            arrs = tuple(np.concatenate([q[j] for q in pts]) for j in range(4))
            out.append(self.classes_of(arrs))
        return out

    def conjugation_closed(self) -> bool:
        """Check that every class is closed under conjugation (by generators-as-elements)."""
        M = self.M
        g_all = self.elements
        for x in range(self.order):
            xi = tuple(int(v[x]) for v in g_all)
            xinv = mat_inv(xi, M)
            conj = mat_mul(mat_mul(xi, g_all, M), xinv, M)
            if not np.array_equal(self.classes_of(conj), self.class_of):
                return False
        return True


@lru_cache(maxsize=None)
def _enumerate_cached(p: int, N: int, kind: Kind, cond: int) -> GroupModel:
    M = p**N
    r = np.arange(M, dtype=np.int64)
    B, C, D = np.meshgrid(r, r, r, indexing="ij")
    B, C, D = B.ravel(), C.ravel(), D.ravel()
    parts = []
    for a in range(M):
        A = np.full_like(B, a)
        keep = ((A * D - B * C) % M == 1) & _predicate(kind, p, M, cond, A, B, C, D)
        if np.any(keep):
            parts.append((A[keep], B[keep], C[keep], D[keep]))
    elems = tuple(np.concatenate([q[j] for q in parts]) for j in range(4))
    return GroupModel(p, N, kind, cond, elems)


def enumerate_group(p: int, N: int, kind: Kind | str, cond: int = 0,
                    max_elements: int = DEFAULT_MAX_ELEMENTS) -> GroupModel:
    """Enumerate a tagged subgroup of SL2(Z/p^N) in lexicographic order."""
    kind = Kind(kind)
    if N < 1 or p < 2:
        raise DomainError(f"need prime p and N >= 1, got p={p}, N={N}")
    if kind is Kind.CONGRUENCE and not 0 <= cond <= N:
        raise DomainError(f"congruence depth {cond} outside [0, {N}]")
    required = p ** (3 * N)
    if required > max_elements:
        raise ResourceBudgetError(f"enumerating SL2(Z/{p}^{N})", required, max_elements)
    return _enumerate_cached(p, N, kind, cond if kind is Kind.CONGRUENCE else 0)


def conjugacy_classes(G: GroupModel) -> list[list[int]]:
    """Class partition as lists of element indices, ordered by representative."""
    out: list[list[int]] = [[] for _ in range(G.num_classes)]
    for i, k in enumerate(G.class_of):
        out[int(k)].append(i)
    return out


# -- Iwahori decomposition ----------------------------------------------------

@dataclass(frozen=True)
class IwahoriTriple:
    J: GroupModel
    U: GroupModel
    L: GroupModel
    Ubar: GroupModel

    @classmethod
    def standard(cls, p: int, N: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> "IwahoriTriple":
        mk = lambda kind: enumerate_group(p, N, kind, max_elements=max_elements)
        return cls(mk(Kind.IWAHORI_UPPER), mk(Kind.UNIP_UPPER), mk(Kind.DIAGONAL), mk(Kind.UNIP_LOWER))

    @property
    def p(self) -> int:
        return self.J.p

    @property
    def N(self) -> int:
        return self.J.N

    def product_map(self) -> np.ndarray:
        """Keys of u*l*ubar over U x L x Ubar, in nested loop order."""
        M = self.J.M
        ui, li, vi = np.meshgrid(np.arange(self.U.order), np.arange(self.L.order),
                                 np.arange(self.Ubar.order), indexing="ij")
        u = tuple(x[ui.ravel()] for x in self.U.elements)
        l = tuple(x[li.ravel()] for x in self.L.elements)
        v = tuple(x[vi.ravel()] for x in self.Ubar.elements)
        return pack(mat_mul(mat_mul(u, l, M), v, M), M)

    def is_bijective(self) -> bool:
        keys = self.product_map()
        if len(keys) != self.J.order:
            return False
        return np.array_equal(np.sort(keys), self.J.keys)

    def normalizes(self) -> bool:
        M = self.J.M
        for l_idx in range(self.L.order):
            l = tuple(int(x[l_idx]) for x in self.L.elements)
            linv = mat_inv(l, M)
            for H in (self.U, self.Ubar):
                conj = mat_mul(mat_mul(l, H.elements, M), linv, M)
                if np.any(H.index_of(conj) < 0):
                    return False
        return True


def _factor_arrays(x, M: int):
    a, b, c, d = x
    dinv = inverse_table(M)[d % M]
    return (b * dinv) % M, dinv, (c * dinv) % M


def iwahori_factorize(g: ResidueMatrix, T: IwahoriTriple | None = None):
    """Write g in J as u * l * ubar with u in U, l in L, ubar in Ubar.

    With u = [[1, x], [0, 1]], l = diag(d^-1, d), ubar = [[1, 0], [y, 1]]
    one has x = b/d and y = c/d.
    """
    if T is not None and (g.p, g.N) != (T.p, T.N):
        raise DomainError("element and triple at different levels")
    if g.c % g.p:
        raise DomainError(f"{g} is not in the Iwahori subgroup")
    p, N, M = g.p, g.N, g.modulus
    dinv = pow(g.d, -1, M)
    u = ResidueMatrix.upper(p, N, g.b * dinv)
    l = ResidueMatrix(p, N, dinv, 0, 0, g.d)
    ubar = ResidueMatrix.lower(p, N, g.c * dinv)
    return u, l, ubar


def lambda_projection(g: ResidueMatrix, T: IwahoriTriple | None = None) -> ResidueMatrix:
    return iwahori_factorize(g, T)[1]


def lambda_arrays(x, M: int) -> np.ndarray:
    """The L-coordinate a = d^{-1} of lambda(x), vectorised over elements of J."""
    return inverse_table(M)[x[3] % M]


def opposite_lambda_arrays(x, M: int) -> np.ndarray:
    """L-coordinate for the opposite order ubar * l * u, which is the a-entry."""
    return x[0] % M


# -- cosets, homomorphisms, conjugation -------------------------------------------

@dataclass(frozen=True)
class DoubleCoset:
    rep: ResidueMatrix
    indices: np.ndarray  # element indices in the ambient group

    @property
    def size(self) -> int:
        return len(self.indices)


def double_coset_decomposition(H: GroupModel, G: GroupModel,
                               preferred: tuple[ResidueMatrix, ...] = ()) -> list[DoubleCoset]:
    """Partition G into H-double cosets H g H.

    The representative is the first of ``preferred`` lying in the coset, else
    the least element.  Cosets are ordered by their least element.
    """
    if not H.is_subgroup_of(G):
        raise DomainError(f"{H!r} is not a subgroup of {G!r}")
    M = G.M
    assigned = np.full(G.order, -1, dtype=np.int64)
    cosets: list[np.ndarray] = []
    hi, hj = np.meshgrid(np.arange(H.order), np.arange(H.order), indexing="ij")
    left = tuple(x[hi.ravel()] for x in H.elements)
    right = tuple(x[hj.ravel()] for x in H.elements)
    for i in range(G.order):
        if assigned[i] >= 0:
            continue
        g = tuple(int(x[i]) for x in G.elements)
        idx = np.unique(G.index_of(mat_mul(mat_mul(left, g, M), right, M)))
        assigned[idx] = len(cosets)
        cosets.append(idx)
    out = []
    for idx in cosets:
        rep = G.element(int(idx[0]))
        for cand in preferred:
            if cand in G and int(assigned[G.index(cand)]) == int(assigned[idx[0]]):
                rep = cand
                break
        out.append(DoubleCoset(rep, idx))
    return out


def edge_homomorphism_q1(h: ResidueMatrix) -> ResidueMatrix:
    """Conjugation by diag(p, 1)^-1 on the lower Iwahori, one level down.

    [[a, b], [c, d]] at level N (b = 0 mod p) maps to
    [[a, b/p], [c*p, d]] at level N - 1.
    """
    p, N = h.p, h.N
    if N < 2:
        raise DomainError("edge homomorphism needs level N >= 2")
    if h.b % p:
        raise DomainError(f"{h} is not in the lower Iwahori subgroup")
    return ResidueMatrix(p, N - 1, h.a, h.b // p, h.c * p, h.d)


def q1_arrays(x, p: int, N: int):
    if N < 2:
        raise DomainError("edge homomorphism needs level N >= 2")
    a, b, c, d = x
    if np.any(b % p):
        raise DomainError("elements outside the lower Iwahori subgroup")
    M1 = p ** (N - 1)
    return (a % M1, (b // p) % M1, (c * p) % M1, d % M1)


def reduce_arrays(x, level_from: int, level_to: int, p: int):
    if level_to > level_from:
        raise DomainError("cannot raise precision by reduction")
    M = p**level_to
    return tuple(v % M for v in x)


def weyl_conjugate(g: ResidueMatrix) -> ResidueMatrix:
    """w g w^-1 with w = [[0, -1], [1, 0]]."""
    w = ResidueMatrix.weyl(g.p, g.N)
    return w * g * w.inverse()


def twist_by(g: ResidueMatrix, x: ResidueMatrix) -> ResidueMatrix:
    """x^-1 g x."""
    return x.inverse() * g * x


def conjugate_arrays(x, g, M: int):
    """g x g^-1 for a fixed element g (4-tuple of ints) over arrays x."""
    return mat_mul(mat_mul(g, x, M), mat_inv(g, M), M)
