"""Parahoric induction and restriction for SL2 at the level of characters.

L is the diagonal torus diag(a, a^-1), identified with the units mod p^n
through the a-entry.  lambda: J -> L is the middle factor of the Iwahori
factorization g = u * lambda(g) * ubar, which works out to diag(d^-1, d).

All functions take a Workspace, which owns the groups and tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from .chartab import (CharacterTable, ClassFunction, VirtualCharacter, decompose, induce,
                      inner_product, invariants_character, pullback)
from .cyclo import Cyclotomic, euler_phi, field, imatmul
from .errors import DomainError, ResourceBudgetError, VerificationError
from .groups import GroupModel, Kind, inverse_table, mat_mul, q1_arrays, reduce_arrays
from .linalg import is_prime
from .workspace import Workspace


# -- characters of L --------------------------------------------------------------

@lru_cache(maxsize=None)
def unit_generator(p: int, n: int) -> int:
    """Least generator of the unit group mod p^n (cyclic for odd p, and for p = 2, n <= 2)."""
    M, phi = p**n, euler_phi(p**n)
    if p == 2 and n >= 3:
        raise DomainError("units mod 2^n are not cyclic for n >= 3")
    for g in range(1, M):
        if g % p == 0:
            continue
        x, k = g, 1
        while x != 1:
            x = x * g % M
            k += 1
        if k == phi:
            return g
    raise DomainError(f"no generator mod {M}")  # pragma: no cover


@lru_cache(maxsize=None)
def discrete_log(p: int, n: int) -> np.ndarray:
    """log[a] with g^log[a] = a mod p^n for units a; -1 for non-units."""
    M, phi = p**n, euler_phi(p**n)
    g = unit_generator(p, n)
    out = np.full(M, -1, dtype=np.int64)
    x = 1
    for k in range(phi):
        out[x] = k
        x = x * g % M
    return out


@dataclass(frozen=True, order=True)
class LCharacter:
    """rho_j: g^k -> zeta^(j k) on the units mod p^n, g the least generator."""

    p: int
    n: int
    j: int

    def __post_init__(self):
        if not is_prime(self.p) or self.n < 1:
            raise DomainError(f"need prime p and n >= 1, got p={self.p}, n={self.n}")
        if self.p == 2 and self.n >= 3:
            raise DomainError("characters of L are indexed by a cyclic unit group; p = 2 needs n <= 2")
        if not 0 <= self.j < self.phi:
            raise DomainError(f"index {self.j} outside [0, {self.phi})")

    @property
    def phi(self) -> int:
        return euler_phi(self.p**self.n)

    @property
    def q(self) -> int:
        return self.p

    @classmethod
    def all(cls, p: int, n: int) -> list["LCharacter"]:
        return [cls(p, n, j) for j in range(euler_phi(p**n))]

    def is_trivial(self) -> bool:
        return self.j == 0

    @property
    def w(self) -> "LCharacter":
        """rho^w(a) = rho(a^-1)."""
        return LCharacter(self.p, self.n, (-self.j) % self.phi)

    def conjugate(self) -> "LCharacter":
        return self.w

    def is_w_fixed(self) -> bool:
        return self.w == self

    def exponent_of(self, a) -> np.ndarray:
        """k with rho(a) = zeta_phi^k, vectorised over unit residues a (mod p^n or finer)."""
        logs = discrete_log(self.p, self.n)[np.asarray(a) % self.p**self.n]
        if np.any(logs < 0):
            raise DomainError("rho evaluated at a non-unit")
        return (self.j * logs) % self.phi

    def value(self, a: int) -> Cyclotomic:
        return Cyclotomic.root_of_unity(self.phi, int(self.exponent_of(np.array([a]))[0]))

    def inflate(self, n2: int) -> "LCharacter":
        """rho composed with reduction from units mod p^n2 to units mod p^n."""
        if n2 < self.n:
            raise DomainError("inflation goes up in level")
        phi2 = euler_phi(self.p**n2)
        k = int(discrete_log(self.p, self.n)[unit_generator(self.p, n2) % self.p**self.n])
        return LCharacter(self.p, n2, (self.j * k * (phi2 // self.phi)) % phi2)

    def __str__(self) -> str:
        return f"rho_{self.j}@{self.p}^{self.n}"


def linear_via_a(G: GroupModel, rho: LCharacter) -> ClassFunction:
    """The class function g -> rho(a(g)); a character whenever g -> a(g) mod p^cond(rho) is a homomorphism."""
    F = field(rho.phi)
    ex = rho.exponent_of(G.a[G.class_reps])
    return ClassFunction(G, rho.phi, F.reduce[ex], 1)


def l_class_function(ws: Workspace, rho: LCharacter) -> ClassFunction:
    return linear_via_a(ws.L(rho.n), rho)


def l_basis(ws: Workspace, n: int) -> CharacterTable:
    """Irr(L_n) as a table whose i-th row is rho_i."""
    key = ("l_basis", n)
    cache = ws.__dict__.setdefault("_extra", {})
    if key not in cache:
        L = ws.L(n)
        rows = [l_class_function(ws, rho).num for rho in LCharacter.all(ws.p, n)]
        cache[key] = CharacterTable(L, euler_phi(ws.p**n), np.array(rows, dtype=np.int64))
    return cache[key]


def l_coordinates(ws: Workspace, phi: ClassFunction) -> tuple[Fraction, ...]:
    """Coordinates of a class function on L_n against rho_0, ..., rho_{phi-1}."""
    return decompose(phi, l_basis(ws, phi.group.N)).coords


def conductor(rho: LCharacter) -> int:
    """Least m >= 1 with rho trivial on 1 + p^m; 0 for the trivial character."""
    if rho.is_trivial():
        return 0
    p, n = rho.p, rho.n
    M = p**n
    for m in range(1, n + 1):
        units = np.arange(1, M, p**m)  # 1 + p^m Z / p^n
        if not np.any(rho.exponent_of(units)):
            return m
    return n  # pragma: no cover - rho is trivial on 1 + p^n


def z_value(rho: LCharacter) -> Fraction:
    if rho.is_trivial():
        return Fraction(1)
    return Fraction(1, rho.q ** (conductor(rho) - 1))


# -- lambda_* and lambda^* ------------------------------------------------------------

def fibre_counts(ws: Workspace, n: int, opposite: bool = False) -> np.ndarray:
    """C[l, k] = #{x in J_n : lambda(x) = l, x in class k}.

    ``opposite`` uses the factorization ubar * l * u instead, whose middle
    factor is diag(a, a^-1).
    """
    key = ("fibres", n, opposite)
    cache = ws.__dict__.setdefault("_extra", {})
    if key not in cache:
        J, L = ws.J(n), ws.L(n)
        M = J.M
        if opposite:
            a = J.a % M
        else:
            a = inverse_table(M)[J.d % M]
        zeros = np.zeros_like(a)
        lidx = L.index_of((a, zeros, zeros, inverse_table(M)[a]))
        if np.any(lidx < 0):
            raise VerificationError("lambda left the diagonal subgroup")
        C = np.zeros((L.num_classes, J.num_classes), dtype=np.int64)
        np.add.at(C, (L.class_of[lidx], J.class_of), 1)
        cache[key] = C
    return cache[key]


def lambda_star(ws: Workspace, phi: ClassFunction, opposite: bool = False) -> ClassFunction:
    """(lambda_* phi)(l) = (1/(|U||Ubar|)) sum over u, ubar of phi(u l ubar)."""
    J = phi.group
    if J is not ws.J(J.N):
        raise DomainError("lambda_* takes a class function on the Iwahori subgroup")
    C = fibre_counts(ws, J.N, opposite)
    uu = J.order // ws.L(J.N).order
    return ClassFunction(ws.L(J.N), phi.m, imatmul(C, phi.num), phi.den * uu)


def lambda_upper_star(ws: Workspace, psi: ClassFunction, opposite: bool = False) -> ClassFunction:
    """(lambda^* psi)(j) = average over k in J of psi(lambda(k^-1 j k))."""
    L = psi.group
    if L is not ws.L(L.N):
        raise DomainError("lambda^* takes a class function on the diagonal subgroup")
    J = ws.J(L.N)
    C = fibre_counts(ws, L.N, opposite)
    sizes = J.class_sizes.astype(np.int64)
    common = lcm(*(int(s) for s in sizes))
    scale = (common // sizes).astype(np.int64)
    num = imatmul(C.T, psi.num)
    num = num * scale[:, None] if num.dtype != object else num * scale.astype(object)[:, None]
    return ClassFunction(J, psi.m, num, psi.den * common)


# -- parahoric induction and restriction -------------------------------------------------

def extend_to_Jc(ws: Workspace, rho: LCharacter) -> ClassFunction:
    """rho-hat(g) = rho(a) on J_c, c = conductor(rho) >= 1."""
    c = conductor(rho)
    if c == 0:
        return ClassFunction.trivial(ws.J(rho.n))
    return linear_via_a(ws.Jc(rho.n, c), rho)


def parahoric_induce(ws: Workspace, rho: LCharacter, route: str = "congruence") -> ClassFunction:
    """Character of i(rho) on J_n.

    route "congruence": ind from J_c of rho-hat.  route "lambda": lambda^*(z^-1 rho).
    route "opposite": lambda^*(z^-1 rho) with the roles of U and Ubar swapped.
    """
    if conductor(rho) > rho.n:
        raise DomainError("conductor exceeds level")  # pragma: no cover - impossible by construction
    if route == "congruence":
        c = conductor(rho)
        if c == 0:
            return ClassFunction.trivial(ws.J(rho.n))
        return induce(ws.Jc(rho.n, c), ws.J(rho.n), extend_to_Jc(ws, rho))
    if route in ("lambda", "opposite"):
        psi = l_class_function(ws, rho) * (1 / z_value(rho))
        return lambda_upper_star(ws, psi, opposite=(route == "opposite"))
    raise DomainError(f"unknown route {route!r}")


def invariants_U(ws: Workspace, pi: ClassFunction) -> ClassFunction:
    n = pi.group.N
    return invariants_character(pi, ws.U(n), ws.L(n))


def invariants_Ubar(ws: Workspace, pi: ClassFunction) -> ClassFunction:
    n = pi.group.N
    return invariants_character(pi, ws.Ubar(n), ws.L(n))


@dataclass(frozen=True)
class Restriction:
    coords: tuple[Fraction, ...]   # against rho_0, ..., rho_{phi-1}
    function: ClassFunction        # on L_n

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_character(self) -> bool:
        return all(c.denominator == 1 and c >= 0 for c in self.coords)


def parahoric_restrict(ws: Workspace, pi: ClassFunction) -> Restriction:
    """r(pi) = z^-1 lambda_*(pi), with z acting on each rho-coordinate.

    Extended linearly to virtual characters.
    """
    n = pi.group.N
    lam = lambda_star(ws, pi)
    coords = tuple(c / z_value(rho) for c, rho in zip(l_coordinates(ws, lam), LCharacter.all(ws.p, n)))
    if any(c.denominator != 1 for c in coords):
        raise VerificationError(f"r produced non-integral multiplicities {coords}")
    return Restriction(coords, l_basis(ws, n).combine(coords))


def invariants_prediction(ws: Workspace, pi: ClassFunction) -> ClassFunction:
    """For irreducible pi: the U-invariants if they pair with the Ubar-invariants, else 0."""
    up, down = invariants_U(ws, pi), invariants_Ubar(ws, pi)
    if inner_product(down, up).is_zero():
        return ClassFunction.zero(up.group)
    return up


# -- vertex groups ------------------------------------------------------------------------

def kprime_induce(ws: Workspace, pi: ClassFunction) -> ClassFunction:
    """ind from J to K' of a class function on J_n, modelled on SL2(Z/p^(n+1)).

    Conjugation by diag(p, 1) carries K' onto K and J onto the lower Iwahori;
    on the lower Iwahori at level n+1 this is q1 onto J_n.
    """
    n = pi.group.N
    Jl, K1 = ws.Jlower(n + 1), ws.K(n + 1)
    pulled = pullback(pi, Jl, lambda x: q1_arrays(x, ws.p, n + 1))
    return induce(Jl, K1, pulled)


def vertex_induce_K(ws: Workspace, rho: LCharacter) -> VirtualCharacter:
    n = rho.n
    chi = induce(ws.J(n), ws.K(n), parahoric_induce(ws, rho))
    return decompose(chi, ws.table(ws.K(n)))


def vertex_induce_Kprime(ws: Workspace, rho: LCharacter) -> VirtualCharacter:
    n = rho.n
    chi = kprime_induce(ws, parahoric_induce(ws, rho))
    return decompose(chi, ws.table(ws.K(n + 1)))


def _delta(a: LCharacter, b: LCharacter) -> int:
    return int(a == b)


def mackey_intertwining(ws: Workspace, rho: LCharacter, tau: LCharacter) -> tuple[Fraction, int]:
    """(<i^K rho, i^K tau>_K, <rho, tau> + <rho, tau^w>)."""
    if rho.n != tau.n:
        raise DomainError("characters at different levels")
    n = rho.n
    J, K = ws.J(n), ws.K(n)
    a = induce(J, K, parahoric_induce(ws, rho))
    b = induce(J, K, parahoric_induce(ws, tau))
    return inner_product(a, b).rational_part(), _delta(rho, tau) + _delta(rho, tau.w)


@dataclass(frozen=True)
class Intertwining:
    pairing: Fraction           # <ind_{L Ubar}^J rho, ind_{L U}^J rho>
    mult_in_lower: Fraction     # <i rho, ind_{L Ubar}^J rho>
    mult_in_upper: Fraction     # <i rho, ind_{L U}^J rho>

    def ok(self) -> bool:
        return self.pairing == self.mult_in_lower == self.mult_in_upper == 1


def one_dimensional_intertwining(ws: Workspace, rho: LCharacter) -> Intertwining:
    n = rho.n
    J = ws.J(n)
    lower, upper = ws.group(n, Kind.LOWER_BOREL), ws.Jc(n, n)
    a = induce(lower, J, linear_via_a(lower, rho))
    b = induce(upper, J, linear_via_a(upper, rho))
    i = parahoric_induce(ws, rho)
    return Intertwining(inner_product(a, b).rational_part(),
                        inner_product(i, a).rational_part(),
                        inner_product(i, b).rational_part())


# -- e_U e_Ubar moments ---------------------------------------------------------------------

def _rational_or_self(x: Cyclotomic):
    return x.rational_part() if x.is_rational() else x


def dihedral_moments(ws: Workspace, pi: ClassFunction, k_max: int = 3) -> list:
    """m_k = trace of (e_U e_Ubar)^k on pi for k = 1..k_max.

    The distribution of u * ubar over J is convolved k times; the work is
    k_max * |U||Ubar| * |J| index updates, checked against ``ws.max_words``.
    """
    J = pi.group
    n = J.N
    if J is not ws.J(n):
        raise DomainError("moments take a class function on the Iwahori subgroup")
    U, Ub = ws.U(n), ws.Ubar(n)
    M = J.M
    support = U.order * Ub.order
    work = k_max * support * J.order
    if work > ws.max_words:
        raise ResourceBudgetError(f"dihedral moments up to k={k_max}", work, ws.max_words)
    ui, bi = np.meshgrid(np.arange(U.order), np.arange(Ub.order), indexing="ij")
    prods = mat_mul(tuple(v[ui.ravel()] for v in U.elements), tuple(v[bi.ravel()] for v in Ub.elements), M)
    steps = J.index_of(prods)
    # right multiplication tables: right[s, g] = index of g * step_s
    right = np.stack([J.index_of(mat_mul(J.elements, tuple(int(v[s]) for v in J.elements), M))
                      for s in steps])
    big = support ** k_max >= 2**62
    dist = np.zeros(J.order, dtype=object if big else np.int64)
    dist[J.index_of(tuple(np.array([v]) for v in (1, 0, 0, 1)))[0]] = 1
    out = []
    for k in range(1, k_max + 1):
        nxt = np.zeros_like(dist)
        for row in right:
            np.add.at(nxt, row, dist)
        dist = nxt
        cls = np.zeros(J.num_classes, dtype=dist.dtype)
        np.add.at(cls, J.class_of, dist)
        tr = imatmul(cls.reshape(1, -1), pi.num)[0]
        den = pi.den * support**k
        out.append(_rational_or_self(Cyclotomic(pi.m, (Fraction(int(v), den) for v in tr))))
    return out


# -- checks --------------------------------------------------------------------------------

def contragredient_check(ws: Workspace, rho: LCharacter) -> bool:
    """conj(ch i(rho)) = ch i(conj rho)."""
    return parahoric_induce(ws, rho).conjugate() == parahoric_induce(ws, rho.conjugate())


def symmetry_check(ws: Workspace, rho: LCharacter) -> bool:
    """i_{U,Ubar} rho = i_{Ubar,U} rho, comparing the two lambda^* routes."""
    return parahoric_induce(ws, rho, "lambda") == parahoric_induce(ws, rho, "opposite")


def borel_counterexample(ws: Workspace, n: int = 2, psi_index: int = 1) -> ClassFunction:
    """Inflation to J_n of ind from N(f) to B(f) of a nontrivial character psi of N(f) = F_p.

    B(f) is the upper Borel of SL2(F_p), i.e. J_1, and N(f) its unipotent radical U_1.
    """
    p = ws.p
    if not 0 < psi_index < p:
        raise DomainError("psi must be a nontrivial character of F_p")
    if n < 1:
        raise DomainError("level must be at least 1")
    N1, B1 = ws.U(1), ws.J(1)
    F = field(p)
    psi = ClassFunction(N1, p, F.reduce[(psi_index * N1.b[N1.class_reps]) % p], 1)
    small = induce(N1, B1, psi)
    return pullback(small, ws.J(n), lambda x: reduce_arrays(x, n, 1, p))
