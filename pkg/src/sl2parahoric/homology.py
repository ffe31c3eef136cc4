"""Depth-truncated chamber complexes of the tree for M = L and G = SL2, and the maps Pind, Pres.

Matrices are integer numpy arrays with columns indexed by the source basis.
Bases:

* M-complex at depth n: degree 1 and degree 0 are both R(L_n) + R(L_n),
  ordered (rho_0 block, rho_1 block), each block by LCharacter index.
* G-complex at depth n: degree 1 is R(J_n) in table order; degree 0 is
  R(K_n) + R(K'_n), where K'_n is modelled on SL2(Z/p^(n+1)).

Pres lands in the M-complex at depth n+1 (the K' vertex needs one more
digit), so every identity involving Pres is compared after inflating the
depth-n L-side along ``inflation_matrix``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .chartab import ClassFunction, decompose, induce, invariants_character, pullback
from .errors import VerificationError
from .groups import reduce_arrays
from .parahoric import (LCharacter, conductor, invariants_U, invariants_Ubar, kprime_induce,
                        l_coordinates, parahoric_induce)
from .workspace import Workspace


def _cache(ws: Workspace) -> dict:
    return ws.__dict__.setdefault("_extra", {})


def _int_vector(coords) -> np.ndarray:
    coords = [Fraction(c) for c in coords]
    if any(c.denominator != 1 for c in coords):
        raise VerificationError(f"non-integral coordinates {coords}")
    return np.array([int(c) for c in coords], dtype=np.int64)


def weyl_permutation(p: int, n: int) -> np.ndarray:
    """Matrix of rho -> rho^w on R(L_n)."""
    rs = LCharacter.all(p, n)
    W = np.zeros((len(rs), len(rs)), dtype=np.int64)
    for rho in rs:
        W[rho.w.j, rho.j] = 1
    return W


def inflation_matrix(p: int, n: int, n2: int) -> np.ndarray:
    """R(L_n) -> R(L_n2) by composing with reduction."""
    rs = LCharacter.all(p, n)
    phi2 = LCharacter(p, n2, 0).phi
    A = np.zeros((phi2, len(rs)), dtype=np.int64)
    for rho in rs:
        A[rho.inflate(n2).j, rho.j] = 1
    return A


# -- complexes -----------------------------------------------------------------------

@dataclass(frozen=True)
class MComplex:
    p: int
    n: int
    boundary: np.ndarray   # degree 1 -> degree 0
    w1: np.ndarray
    w0: np.ndarray

    @property
    def dims(self) -> tuple[int, int]:
        return self.boundary.shape[1], self.boundary.shape[0]


@dataclass(frozen=True)
class GComplex:
    p: int
    n: int
    boundary: np.ndarray   # rows: Irr(K_n) then Irr(K'_n); columns: Irr(J_n)
    k_dim: int
    kprime_dim: int

    @property
    def dims(self) -> tuple[int, int]:
        return self.boundary.shape[1], self.boundary.shape[0]


def build_m_complex(p: int, n: int) -> MComplex:
    phi = len(LCharacter.all(p, n))
    I = np.eye(phi, dtype=np.int64)
    Z = np.zeros_like(I)
    W = weyl_permutation(p, n)
    d = np.block([[I, I], [-I, -I]])
    return MComplex(p, n, d, np.block([[Z, W], [W, Z]]), np.block([[W, Z], [Z, W]]))


def build_g_complex(ws: Workspace, n: int) -> GComplex:
    key = ("g_complex", n)
    cache = _cache(ws)
    if key not in cache:
        J, K = ws.J(n), ws.K(n)
        TK, TK1 = ws.table(K), ws.table(ws.K(n + 1))
        cols = []
        for pi in ws.table(J):
            a = _int_vector(decompose(induce(J, K, pi), TK).coords)
            b = _int_vector(decompose(kprime_induce(ws, pi), TK1).coords)
            cols.append(np.concatenate([a, -b]))
        cache[key] = GComplex(ws.p, n, np.array(cols, dtype=np.int64).T, len(TK), len(TK1))
    return cache[key]


# -- chain maps ------------------------------------------------------------------------

def _irr_coords_J(ws: Workspace, n: int, rho: LCharacter) -> np.ndarray:
    return _int_vector(decompose(parahoric_induce(ws, rho), ws.table(ws.J(n))).coords)


@dataclass(frozen=True)
class ChainMap:
    degree1: np.ndarray
    degree0: np.ndarray


def pind_chain(ws: Workspace, n: int) -> ChainMap:
    """Pind_1(rho0, rho1) = i rho0 + i rho1^w;  Pind_0(rho0, rho1) = (i^K rho0, i^K' rho1)."""
    key = ("pind", n)
    cache = _cache(ws)
    if key not in cache:
        G = build_g_complex(ws, n)
        rs = LCharacter.all(ws.p, n)
        TK, TK1 = ws.table(ws.K(n)), ws.table(ws.K(n + 1))
        J, K = ws.J(n), ws.K(n)
        d1 = [_irr_coords_J(ws, n, r) for r in rs] + [_irr_coords_J(ws, n, r.w) for r in rs]
        zk, zk1 = np.zeros(G.k_dim, dtype=np.int64), np.zeros(G.kprime_dim, dtype=np.int64)
        d0 = []
        for r in rs:
            iK = _int_vector(decompose(induce(J, K, parahoric_induce(ws, r)), TK).coords)
            d0.append(np.concatenate([iK, zk1]))
        for r in rs:
            iK1 = _int_vector(decompose(kprime_induce(ws, parahoric_induce(ws, r)), TK1).coords)
            d0.append(np.concatenate([zk, iK1]))
        cache[key] = ChainMap(np.array(d1).T, np.array(d0).T)
    return cache[key]


def _l_vector(ws: Workspace, phi: ClassFunction) -> np.ndarray:
    return _int_vector(l_coordinates(ws, phi))


def pres_chain(ws: Workspace, n: int) -> ChainMap:
    """Pres_1 pi = (pi^U, (pi^Ubar)^w);  Pres_0(pi0, pi1) = (pi0^U, pi1^V), landing at depth n+1."""
    key = ("pres", n)
    cache = _cache(ws)
    if key not in cache:
        p = ws.p
        W = weyl_permutation(p, n)
        inf = inflation_matrix(p, n, n + 1)
        d1 = []
        for pi in ws.table(ws.J(n)):
            up = _l_vector(ws, invariants_U(ws, pi))
            down = W @ _l_vector(ws, invariants_Ubar(ws, pi))
            d1.append(np.concatenate([inf @ up, inf @ down]))
        phi1 = inf.shape[0]
        d0 = []
        for chi in ws.table(ws.K(n)):
            up = _l_vector(ws, invariants_character(chi, ws.U(n), ws.L(n)))
            d0.append(np.concatenate([inf @ up, np.zeros(phi1, dtype=np.int64)]))
        for chi in ws.table(ws.K(n + 1)):
            v = _l_vector(ws, invariants_character(chi, ws.U(n + 1), ws.L(n + 1)))
            d0.append(np.concatenate([np.zeros(phi1, dtype=np.int64), v]))
        cache[key] = ChainMap(np.array(d1).T, np.array(d0).T)
    return cache[key]


# -- identities ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    name: str
    holds: bool
    residual_norm: int = 0
    detail: str = ""


def _compare(name: str, lhs: np.ndarray, rhs: np.ndarray) -> Identity:
    if lhs.shape != rhs.shape:
        return Identity(name, False, -1, f"shape {lhs.shape} vs {rhs.shape}")
    diff = lhs - rhs
    bad = np.argwhere(diff != 0)
    detail = "" if not len(bad) else f"first mismatch at (row, column) {tuple(int(x) for x in bad[0])}"
    return Identity(name, not len(bad), int(np.abs(diff).sum()), detail)


def commuting_squares(ws: Workspace, n: int) -> list[Identity]:
    M, M1, G = build_m_complex(ws.p, n), build_m_complex(ws.p, n + 1), build_g_complex(ws, n)
    pind, pres = pind_chain(ws, n), pres_chain(ws, n)
    return [
        _compare("pind_square", G.boundary @ pind.degree1, pind.degree0 @ M.boundary),
        _compare("pres_square", M1.boundary @ pres.degree1, pres.degree0 @ G.boundary),
    ]


def w_action_identities(p: int, n: int) -> list[Identity]:
    M = build_m_complex(p, n)
    I = np.eye(M.w1.shape[0], dtype=np.int64)
    return [
        _compare("w_involution_degree1", M.w1 @ M.w1, I),
        _compare("w_involution_degree0", M.w0 @ M.w0, I),
        _compare("w_commutes_with_boundary", M.boundary @ M.w1, M.w0 @ M.boundary),
    ]


def verify_pres_pind(ws: Workspace, n: int) -> list[Identity]:
    """Pres Pind = 1 + w in both degrees, after inflating the target to depth n+1."""
    M = build_m_complex(ws.p, n)
    inf = inflation_matrix(ws.p, n, n + 1)
    Z = np.zeros_like(inf)
    inf2 = np.block([[inf, Z], [Z, inf]])
    I = np.eye(M.w1.shape[0], dtype=np.int64)
    pind, pres = pind_chain(ws, n), pres_chain(ws, n)
    return [
        _compare("pres_pind_degree1", pres.degree1 @ pind.degree1, inf2 @ (I + M.w1)),
        _compare("pres_pind_degree0", pres.degree0 @ pind.degree0, inf2 @ (I + M.w0)),
    ]


def invariants_identity(ws: Workspace, n: int) -> list[Identity]:
    """(ind_J^K pi)^U = pi^U + (pi^Ubar)^w, and its K' counterpart, classwise on L."""
    J, K = ws.J(n), ws.K(n)
    inf = inflation_matrix(ws.p, n, n + 1)
    W = weyl_permutation(ws.p, n)
    bad_k, bad_kp = [], []
    for idx, pi in enumerate(ws.table(J)):
        up, down = invariants_U(ws, pi), invariants_Ubar(ws, pi)
        lhs = invariants_character(induce(J, K, pi), ws.U(n), ws.L(n))
        rhs = up + _twist_l(ws, down)
        if lhs != rhs:
            bad_k.append(idx)
        lhs1 = _l_vector(ws, invariants_character(kprime_induce(ws, pi), ws.U(n + 1), ws.L(n + 1)))
        rhs1 = inf @ (_l_vector(ws, up) + W @ _l_vector(ws, down))
        if not np.array_equal(lhs1, rhs1):
            bad_kp.append(idx)
    return [Identity("invariants_identity_K", not bad_k, len(bad_k), f"failing Irr(J) indices {bad_k}"),
            Identity("invariants_identity_Kprime", not bad_kp, len(bad_kp), f"failing Irr(J) indices {bad_kp}")]


def _twist_l(ws: Workspace, psi: ClassFunction) -> ClassFunction:
    """psi^w(l) = psi(w l w^-1) = psi(l^-1) on the diagonal subgroup."""
    L = psi.group
    return ClassFunction(L, psi.m, psi.num[L.inverse_classes], psi.den)


# -- homology ---------------------------------------------------------------------------

def homology_ranks(boundary: np.ndarray) -> tuple[int, int]:
    """(dim ker in degree 1, dim coker in degree 0) over Q."""
    rows, cols = boundary.shape
    r = linalg.rank(boundary.tolist()) if rows and cols else 0
    return cols - r, rows - r


def two_element_orbits(p: int, n: int) -> list[LCharacter]:
    """One representative (smaller index) of each W-orbit {rho, rho^w} with rho != rho^w."""
    return [r for r in LCharacter.all(p, n) if r.j < r.w.j]


@dataclass(frozen=True)
class H1Report:
    p: int
    n: int
    cycles: np.ndarray            # columns c_rho in Irr(J_n) coordinates
    orbit_reps: tuple[int, ...]
    cycles_in_kernel: bool
    cycles_independent: bool
    kernel_dim: int
    cycles_span_kernel: bool
    excess: int
    pres_injective: bool
    pres_images_ok: bool
    kernel_basis: tuple[tuple[int, ...], ...]

    @property
    def hard_pass(self) -> bool:
        return self.cycles_in_kernel and self.cycles_independent and self.pres_injective and self.pres_images_ok


def h1_basis_check(ws: Workspace, n: int) -> H1Report:
    G = build_g_complex(ws, n)
    reps = two_element_orbits(ws.p, n)
    ncols = G.boundary.shape[1]
    cycles = np.array([_irr_coords_J(ws, n, r) - _irr_coords_J(ws, n, r.w) for r in reps],
                      dtype=np.int64).reshape(len(reps), ncols).T
    in_kernel = not np.any(G.boundary @ cycles)
    rank_c = linalg.rank(cycles.T.tolist()) if len(reps) else 0
    kernel = linalg.nullspace(G.boundary.tolist(), ncols)
    kdim = len(kernel)
    joint = linalg.rank(kernel + cycles.T.tolist()) if (kernel or len(reps)) else 0
    span = joint == kdim and rank_c == kdim
    pres = pres_chain(ws, n)
    images = pres.degree1 @ cycles
    inj = (linalg.rank(images.T.tolist()) if len(reps) else 0) == len(reps)
    inf = inflation_matrix(ws.p, n, n + 1)
    phi = inf.shape[1]
    ok = True
    for col, r in enumerate(reps):
        e = np.zeros(phi, dtype=np.int64)
        e[r.j] += 1
        e[r.w.j] -= 1
        expected = np.concatenate([inf @ e, -(inf @ e)])
        ok &= bool(np.array_equal(images[:, col], expected))
    return H1Report(ws.p, n, cycles, tuple(r.j for r in reps), in_kernel, rank_c == len(reps),
                    kdim, span, kdim - rank_c, inj, ok,
                    tuple(tuple(int(x) for x in v) for v in kernel))


# -- depth stability ---------------------------------------------------------------------------

def depth_stability(ws: Workspace, n: int) -> list[Identity]:
    """For conductor <= n-1, depth-n constructions equal inflations of depth-(n-1) ones."""
    if n < 2:
        return []
    p = ws.p
    J0, J1 = ws.J(n - 1), ws.J(n)
    K0, K1 = ws.K(n - 1), ws.K(n)
    Kp0, Kp1 = ws.K(n), ws.K(n + 1)
    bad: dict[str, list[int]] = {"i": [], "iK": [], "iKprime": [], "r": []}
    for rho in LCharacter.all(p, n - 1):
        up = rho.inflate(n)
        assert conductor(up) == conductor(rho)
        small = parahoric_induce(ws, rho)
        big = parahoric_induce(ws, up)
        if pullback(small, J1, lambda x: reduce_arrays(x, n, n - 1, p)) != big:
            bad["i"].append(rho.j)
        if pullback(induce(J0, K0, small), K1, lambda x: reduce_arrays(x, n, n - 1, p)) != induce(J1, K1, big):
            bad["iK"].append(rho.j)
        if pullback(kprime_induce(ws, small), Kp1, lambda x: reduce_arrays(x, n + 1, n, p)) != kprime_induce(ws, big):
            bad["iKprime"].append(rho.j)
    inf = inflation_matrix(p, n - 1, n)
    for idx, pi in enumerate(ws.table(J0)):
        lifted = pullback(pi, J1, lambda x: reduce_arrays(x, n, n - 1, p))
        if not np.array_equal(_l_vector(ws, invariants_U(ws, lifted)), inf @ _l_vector(ws, invariants_U(ws, pi))):
            bad["r"].append(idx)
    return [Identity(f"depth_stability_{k}", not v, len(v), f"failing indices {v}" if v else "")
            for k, v in bad.items()]


# -- export ---------------------------------------------------------------------------------

def matrix_to_text(A: np.ndarray) -> str:
    """Plain-text exchange format: a 'rows cols' header, then one line of integers per row."""
    rows, cols = A.shape
    lines = [f"{rows} {cols}"] + [" ".join(str(int(x)) for x in row) for row in A]
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> np.ndarray:
    lines = text.strip().splitlines()
    rows, cols = (int(x) for x in lines[0].split())
    data = [[int(x) for x in line.split()] for line in lines[1:1 + rows]]
    A = np.array(data, dtype=np.int64).reshape(rows, cols)
    return A
