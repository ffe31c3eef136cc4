"""Verification suites: each check yields a record {check_id, inputs, expected, got, pass}."""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from . import homology as hom
from .chartab import ClassFunction, decompose, induce, inner_product, invariants_character, norm, restrict
from .cyclo import Cyclotomic
from .groups import (IwahoriTriple, Kind, ResidueMatrix, double_coset_decomposition, full_order,
                     iwahori_factorize, mat_mul, q1_arrays)
from .parahoric import (LCharacter, conductor, contragredient_check, dihedral_moments,
                        mackey_intertwining, one_dimensional_intertwining, parahoric_induce,
                        parahoric_restrict, invariants_prediction, borel_counterexample,
                        symmetry_check, vertex_induce_K, vertex_induce_Kprime, z_value)
from .workspace import Workspace

SUITES = ("iwahori", "characters", "parahoric", "mackey", "dihedral", "chains")


def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Cyclotomic):
        return x.to_json()
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


@dataclass
class Check:
    check_id: str
    inputs: dict
    expected: Any
    got: Any
    passed: bool

    def to_record(self) -> dict:
        return {"check_id": self.check_id, "inputs": _plain(self.inputs), "expected": _plain(self.expected),
                "got": _plain(self.got), "pass": bool(self.passed)}

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, separators=(",", ":"))


@dataclass
class Collector:
    p: int
    n: int
    checks: list[Check] = field(default_factory=list)

    def add(self, check_id: str, expected, got, passed: bool | None = None, **inputs):
        if passed is None:
            passed = expected == got
        self.checks.append(Check(check_id, {"p": self.p, "n": self.n, **inputs}, expected, got, bool(passed)))

    def identity(self, ident: hom.Identity, check_id: str | None = None):
        self.add(check_id or ident.name, {"residual": 0}, {"residual": ident.residual_norm, "detail": ident.detail},
                 ident.holds)


# -- suites --------------------------------------------------------------------------

def suite_iwahori(ws: Workspace, n: int) -> list[Check]:
    c = Collector(ws.p, n)
    p = ws.p
    K, J, U, L, Ub = ws.K(n), ws.J(n), ws.U(n), ws.L(n), ws.Ubar(n)
    c.add("iwahori.order_K", full_order(p, n), K.order)
    c.add("iwahori.order_J", K.order // (p + 1), J.order)
    c.add("iwahori.index_K_J", p + 1, K.order // J.order)
    c.add("iwahori.haar_product", J.order, U.order * L.order * Ub.order,
          orders={"U": U.order, "L": L.order, "Ubar": Ub.order})
    T = IwahoriTriple(J, U, L, Ub)
    c.add("iwahori.product_bijective", True, T.is_bijective())
    c.add("iwahori.L_normalizes", True, T.normalizes())
    failures = 0
    for i in range(J.order):
        g = J.element(i)
        u, l, ub = iwahori_factorize(g, T)
        if u * l * ub != g or u not in U or l not in L or ub not in Ub:
            failures += 1
    c.add("iwahori.factorization_roundtrip", 0, failures, elements=J.order)
    for G in (K, J, U, L, Ub, ws.group(n, Kind.IWAHORI_INTERSECTION)):
        c.add("iwahori.class_sizes_sum", G.order, int(G.class_sizes.sum()), group=G.tag)
    w = ResidueMatrix.weyl(p, n)
    cos = double_coset_decomposition(J, K, preferred=(ResidueMatrix.identity(p, n), w))
    names = {ResidueMatrix.identity(p, n): "1", w: "w"}
    c.add("iwahori.bruhat", {"count": 2, "reps": ["1", "w"], "sizes": sorted([J.order, K.order - J.order])},
          {"count": len(cos), "reps": sorted(names.get(d.rep, str(d.rep)) for d in cos),
           "sizes": sorted(d.size for d in cos)})
    meet = ws.group(n, Kind.IWAHORI_INTERSECTION)
    wm = w.entries()
    winv = w.inverse().entries()
    conj = mat_mul(mat_mul(wm, meet.elements, meet.M), winv, meet.M)
    c.add("iwahori.meet_w_stable", True, bool(np.all(meet.index_of(conj) >= 0)))
    # q1 from the lower Iwahori at level n+1 onto J_n
    Jl = ws.Jlower(n + 1)
    img = q1_arrays(Jl.elements, p, n + 1)
    idx = J.index_of(img)
    c.add("iwahori.q1_image", J.order, int(len(np.unique(idx[idx >= 0]))) if np.all(idx >= 0) else -1)
    rng = np.random.default_rng(20240611 + n)
    a = rng.integers(0, Jl.order, 2000)
    b = rng.integers(0, Jl.order, 2000)
    x = tuple(v[a] for v in Jl.elements)
    y = tuple(v[b] for v in Jl.elements)
    lhs = q1_arrays(mat_mul(x, y, Jl.M), p, n + 1)
    rhs = mat_mul(q1_arrays(x, p, n + 1), q1_arrays(y, p, n + 1), J.M)
    c.add("iwahori.q1_homomorphism", 0, int(sum(np.count_nonzero(u != v) for u, v in zip(lhs, rhs))), pairs=2000)
    ident = J.index(ResidueMatrix.identity(p, n))
    c.add("iwahori.q1_kernel", Jl.order // J.order, int(np.count_nonzero(idx == ident)))
    return c.checks


def _table_checks(c: Collector, ws: Workspace, G):
    T = ws.table(G)
    rows, cols = T.check_orthogonality()
    c.add("characters.row_orthogonality", True, rows, group=G.tag, level=G.N)
    c.add("characters.column_orthogonality", True, cols, group=G.tag, level=G.N)
    c.add("characters.degree_squares", G.order, sum(d * d for d in T.degrees), group=G.tag, level=G.N)
    c.add("characters.count_equals_classes", G.num_classes, len(T), group=G.tag, level=G.N)


def suite_characters(ws: Workspace, n: int) -> list[Check]:
    c = Collector(ws.p, n)
    seen = set()
    for G in (ws.L(n), ws.J(n), ws.K(n), ws.K(n + 1)):
        if (G.N, G.tag) not in seen:
            seen.add((G.N, G.tag))
            _table_checks(c, ws, G)
    K1 = ws.K(1)
    c.add("characters.sl2_fp_degrees", _sl2_fp_degrees(ws.p), sorted(ws.table(K1).degrees))
    J, K = ws.J(n), ws.K(n)
    perm = induce(J, K, ClassFunction.trivial(J))
    c.add("characters.permutation_degree", Fraction(ws.p + 1), perm.degree)
    c.add("characters.permutation_trivial_multiplicity", Fraction(1), inner_product(perm, ClassFunction.trivial(K)).rational_part())
    TJ, TK = ws.table(J), ws.table(K)
    bad = 0
    for chi in TJ:
        ind = induce(J, K, chi)
        v = decompose(ind, TK)
        if not v.is_character() or v.to_class_function() != ind:
            bad += 1
    c.add("characters.induced_are_characters", 0, bad)
    return c.checks


def _sl2_fp_degrees(p: int) -> list[int]:
    """Degrees of SL2(F_p), p odd: 1, two of (p+1)/2, two of (p-1)/2, p, (p-3)/2 of p+1, (p-1)/2 of p-1."""
    if p == 2:
        return [1, 1, 2]
    degs = [1, p] + [(p + 1) // 2] * 2 + [(p - 1) // 2] * 2 + [p + 1] * ((p - 3) // 2) + [p - 1] * ((p - 1) // 2)
    return sorted(degs)


def suite_parahoric(ws: Workspace, n: int) -> list[Check]:
    c = Collector(ws.p, n)
    p = ws.p
    rs = LCharacter.all(p, n)
    conds = [conductor(r) for r in rs]
    c.add("parahoric.conductors", "0 for trivial, else in [1, n]", conds,
          conds[0] == 0 and all(1 <= x <= n for x in conds[1:]))
    for r in rs:
        inp = {"rho": r.j}
        cond = conductor(r)
        i1 = parahoric_induce(ws, r)
        i2 = parahoric_induce(ws, r, "lambda")
        z = z_value(r)
        branch = Fraction(1) if cond == 0 else Fraction(1, p ** (cond - 1))
        c.add("parahoric.z_branch_vs_degree_ratio", branch, 1 / i1.degree, **inp)
        c.add("parahoric.z_value", branch, z, **inp)
        c.add("parahoric.induce_routes_agree", True, i1 == i2, **inp)
        c.add("parahoric.induce_norm", Fraction(1), norm(i1), **inp)
        c.add("parahoric.induce_degree", Fraction(p ** max(cond - 1, 0)), i1.degree, **inp)
        R = parahoric_restrict(ws, i1)
        c.add("parahoric.restrict_induce_identity", [int(k == r.j) for k in range(r.phi)],
              [int(x) for x in R.coords], **inp)
        c.add("parahoric.symmetry_U_Ubar", True, symmetry_check(ws, r), **inp)
        c.add("parahoric.contragredient", True, contragredient_check(ws, r), **inp)
        it = one_dimensional_intertwining(ws, r)
        c.add("parahoric.one_dimensional_intertwining", [1, 1, 1],
              [it.pairing, it.mult_in_lower, it.mult_in_upper], **inp)
        if r.j == r.w.j == r.conjugate().j:
            c.add("parahoric.self_conjugate_real", True, i1.is_real(), **inp)
    bad_genuine, bad_pred, nonzero = 0, 0, 0
    for pi in ws.table(ws.J(n)):
        R = parahoric_restrict(ws, pi)
        bad_genuine += not R.is_character()
        bad_pred += R.function != invariants_prediction(ws, pi)
        if not R.is_zero():
            nonzero += 1
            if sum(R.coords) != 1:
                bad_pred += 1
            else:
                rho = LCharacter(p, n, R.coords.index(1))
                bad_pred += parahoric_induce(ws, rho) != pi
    c.add("parahoric.restrict_genuine", 0, bad_genuine)
    c.add("parahoric.restrict_invariants_consistent", 0, bad_pred)
    c.add("parahoric.restrict_nonzero_count", len(rs), nonzero)
    if n >= 2:
        pi = borel_counterexample(ws, n)
        R = parahoric_restrict(ws, pi)
        meet = ws.group(n, Kind.IWAHORI_INTERSECTION)
        dim_meet = inner_product(restrict(ws.J(n), meet, pi), ClassFunction.trivial(meet)).rational_part()
        c.add("parahoric.counterexample_degree", Fraction(p - 1), pi.degree)
        c.add("parahoric.counterexample_U_invariants", Fraction(0), invariants_character(pi, ws.U(n), ws.L(n)).degree)
        c.add("parahoric.counterexample_restrict_zero", True, R.is_zero())
        c.add("parahoric.counterexample_meet_invariants", ">=1", dim_meet, dim_meet >= 1)
    return c.checks


def suite_mackey(ws: Workspace, n: int) -> list[Check]:
    c = Collector(ws.p, n)
    rs = LCharacter.all(ws.p, n)
    bad = []
    for r in rs:
        for t in rs:
            lhs, rhs = mackey_intertwining(ws, r, t)
            if lhs != rhs:
                bad.append([r.j, t.j, str(lhs), rhs])
    c.add("mackey.intertwining_all_pairs", [], bad, pairs=len(rs) ** 2)
    split, irred = [], []
    for r in rs:
        vK = vertex_induce_K(ws, r)
        c.add("mackey.iK_w_invariant", True, vK == vertex_induce_K(ws, r.w), rho=r.j)
        c.add("mackey.iKprime_w_invariant", True, vertex_induce_Kprime(ws, r) == vertex_induce_Kprime(ws, r.w), rho=r.j)
        cond = conductor(r)
        c.add("mackey.iK_degree", (ws.p + 1) * ws.p ** max(cond - 1, 0), int(vK.to_class_function().degree), rho=r.j)
        mult = sorted(m for m in vK.multiplicities() if m)
        (split if mult == [1, 1] else irred if mult == [1] else []).append(r.j)
        expected = [1, 1] if r.is_w_fixed() else [1]
        c.add("mackey.iK_constituents", expected, mult, rho=r.j)
    c.add("mackey.split_count", sum(r.is_w_fixed() for r in rs), len(split), split=split)
    c.add("mackey.irreducible_count", sum(not r.is_w_fixed() for r in rs), len(irred), irreducible=irred)
    return c.checks


def suite_dihedral(ws: Workspace, n: int, k_max: int = 3) -> list[Check]:
    c = Collector(ws.p, n)
    J = ws.J(n)
    triv = dihedral_moments(ws, ClassFunction.trivial(J), k_max)
    c.add("dihedral.trivial_moments", [Fraction(1)] * k_max, triv)
    for r in LCharacter.all(ws.p, n):
        z = z_value(r)
        m = dihedral_moments(ws, parahoric_induce(ws, r), k_max)
        c.add("dihedral.first_moment", z, m[0], rho=r.j)
        ratios = [m[k + 1] / m[k] for k in range(k_max - 1)]
        c.add("dihedral.moment_ratio_equals_z", [z] * (k_max - 1), ratios, rho=r.j, conductor=conductor(r))
    if n >= 2:
        m = dihedral_moments(ws, borel_counterexample(ws, n), 1)
        c.add("dihedral.counterexample_first_moment", Fraction(0), m[0])
    return c.checks


def suite_chains(ws: Workspace, n: int) -> list[Check]:
    c = Collector(ws.p, n)
    M, G = hom.build_m_complex(ws.p, n), hom.build_g_complex(ws, n)
    phi = len(LCharacter.all(ws.p, n))
    c.add("chains.m_dims", [2 * phi, 2 * phi], list(M.dims))
    c.add("chains.m_boundary_rank", phi, M.dims[0] - hom.homology_ranks(M.boundary)[0])
    c.add("chains.g_edge_dim", ws.J(n).num_classes, G.dims[0])
    k = G.k_dim
    c.add("chains.g_boundary_signs", True,
          bool(np.all(G.boundary[:k] >= 0) and np.all(G.boundary[k:] <= 0)))
    for ident in (hom.w_action_identities(ws.p, n) + hom.commuting_squares(ws, n)
                  + hom.verify_pres_pind(ws, n) + hom.invariants_identity(ws, n)):
        c.identity(ident, "chains." + ident.name)
    h = hom.h1_basis_check(ws, n)
    expected = len(hom.two_element_orbits(ws.p, n))
    c.add("chains.h1_cycles_in_kernel", True, h.cycles_in_kernel)
    c.add("chains.h1_cycles_independent", True, h.cycles_independent)
    c.add("chains.h1_pres_images", True, h.pres_images_ok)
    c.add("chains.h1_pres_injective", True, h.pres_injective)
    c.add("chains.h1_kernel_dim", expected, h.kernel_dim, excess=h.excess)
    for ident in hom.depth_stability(ws, n):
        c.identity(ident, "chains." + ident.name)
    return c.checks


_RUNNERS: dict[str, Callable[[Workspace, int], list[Check]]] = {
    "iwahori": suite_iwahori,
    "characters": suite_characters,
    "parahoric": suite_parahoric,
    "mackey": suite_mackey,
    "dihedral": suite_dihedral,
    "chains": suite_chains,
}


def run_suites(ws: Workspace, n: int, suite: str = "all", jobs: int = 1) -> list[Check]:
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in _RUNNERS:
            raise KeyError(name)
    if jobs > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda s: _RUNNERS[s](ws, n), names))
    else:
        parts = [_RUNNERS[s](ws, n) for s in names]
    return [chk for part in parts for chk in part]


def summary(checks: list[Check]) -> dict[str, tuple[int, int]]:
    passed, total = Counter(), Counter()
    for chk in checks:
        suite = chk.check_id.split(".")[0]
        total[suite] += 1
        passed[suite] += chk.passed
    return {s: (passed[s], total[s]) for s in total}
