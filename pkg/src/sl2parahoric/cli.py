"""Command-line entry point.

Exit codes: 0 pass, 1 verification failure, 2 usage, 3 resource budget, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import homology as hom
from .config import RunConfig
from .errors import DomainError, ResourceBudgetError
from .groups import Kind
from .parahoric import LCharacter, conductor, parahoric_induce, z_value
from .verify import SUITES, run_suites, summary

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET, EXIT_CRASH = 0, 1, 2, 3, 4


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(cfg: RunConfig, lines: list[str]):
    text = "".join(line + "\n" for line in lines)
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        cfg.out.write_text(text)


def cmd_table(cfg: RunConfig, tag: str, cond: int) -> int:
    ws = cfg.workspace()
    G = ws.group(cfg.depth, Kind(tag), cond)
    from .workspace import code_version
    _emit(cfg, [ws.table(G).to_json(code_version()).rstrip("\n")])
    return EXIT_OK


def cmd_zvalues(cfg: RunConfig) -> int:
    ws = cfg.workspace()
    lines = []
    for rho in LCharacter.all(cfg.p, cfg.depth):
        deg = parahoric_induce(ws, rho).degree
        lines.append(_dump({"index": rho.j, "conductor": conductor(rho), "z": str(z_value(rho)),
                            "deg_i": str(deg), "w_index": rho.w.j}))
    _emit(cfg, lines)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    ws = cfg.workspace()
    checks = run_suites(ws, cfg.depth, cfg.suite, cfg.jobs)
    _emit(cfg, [c.to_json() for c in checks])
    for suite, (ok, total) in summary(checks).items():
        print(f"{suite:<12} {ok}/{total}", file=sys.stderr)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def cmd_homology(cfg: RunConfig, export: Path | None) -> int:
    ws = cfg.workspace()
    n = cfg.depth
    M, G = hom.build_m_complex(cfg.p, n), hom.build_g_complex(ws, n)
    h = hom.h1_basis_check(ws, n)
    idents = (hom.commuting_squares(ws, n) + hom.verify_pres_pind(ws, n)
              + hom.w_action_identities(cfg.p, n) + hom.depth_stability(ws, n))
    report = {
        "p": cfg.p, "n": n,
        "dims": {"m": list(M.dims), "g": list(G.dims), "k": G.k_dim, "kprime": G.kprime_dim},
        "ranks": {"m": list(hom.homology_ranks(M.boundary)), "g": list(hom.homology_ranks(G.boundary))},
        "h0_caveat": "coker at fixed depth only approximates the colimit",
        "h1": {"kernel_dim": h.kernel_dim, "expected": len(h.orbit_reps), "excess": h.excess,
               "orbit_representatives": list(h.orbit_reps),
               "cycle_basis": h.cycles.T.tolist(), "kernel_basis": [list(v) for v in h.kernel_basis],
               "cycles_in_kernel": h.cycles_in_kernel, "cycles_independent": h.cycles_independent,
               "cycles_span_kernel": h.cycles_span_kernel, "pres_injective": h.pres_injective},
        "identities": {i.name: i.holds for i in idents},
    }
    if export is not None:
        export.mkdir(parents=True, exist_ok=True)
        pind, pres = hom.pind_chain(ws, n), hom.pres_chain(ws, n)
        for name, A in {"m_boundary": M.boundary, "g_boundary": G.boundary,
                        "pind1": pind.degree1, "pind0": pind.degree0,
                        "pres1": pres.degree1, "pres0": pres.degree0}.items():
            (export / f"{name}_p{cfg.p}_n{n}.txt").write_text(hom.matrix_to_text(A))
    _emit(cfg, [_dump(report)])
    if h.excess:
        print(f"warning: kernel exceeds the cycle span by {h.excess}", file=sys.stderr)
    ok = h.hard_pass and all(i.holds for i in idents)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=3, help="odd prime (default 3)")
    common.add_argument("--depth", "--level", dest="depth", type=int, default=2)
    common.add_argument("--cache-dir", default=None, help="table cache (env SL2PARAHORIC_CACHE overrides)")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--max-elements", type=int, default=None)
    common.add_argument("--max-words", type=int, default=None)

    ap = argparse.ArgumentParser(prog="sl2parahoric", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    t = sub.add_parser("table", parents=[common], help="character table as JSON")
    t.add_argument("--tag", default="full", choices=[k.value for k in Kind])
    t.add_argument("--cond", type=int, default=0, help="congruence depth for --tag congruence")
    sub.add_parser("zvalues", parents=[common], help="conductor, z and deg i(rho) per character of L")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", default="all", choices=("all",) + SUITES)
    h = sub.add_parser("homology", parents=[common], help="chain complexes, ranks and H1 cycles")
    h.add_argument("--export-dir", default=None, help="write boundary and chain-map matrices as text")
    return ap


def _config(args) -> RunConfig:
    kw = {}
    if args.max_elements is not None:
        kw["max_elements"] = args.max_elements
    if args.max_words is not None:
        kw["max_words"] = args.max_words
    return RunConfig(p=args.p, depth=args.depth, suite=getattr(args, "suite", "all"),
                     cache_dir=RunConfig.resolve_cache_dir(args.cache_dir),
                     out=Path(args.out) if args.out else None, jobs=args.jobs, **kw)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = _config(args)
        if args.command == "table":
            return cmd_table(cfg, args.tag, args.cond)
        if args.command == "zvalues":
            return cmd_zvalues(cfg)
        if args.command == "verify":
            return cmd_verify(cfg)
        return cmd_homology(cfg, Path(args.export_dir) if args.export_dir else None)
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceBudgetError as exc:
        print(f"resource budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except Exception as exc:  # noqa: BLE001 - crash must be distinguishable from failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CRASH


if __name__ == "__main__":
    sys.exit(main())
