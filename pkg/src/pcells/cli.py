"""Command line: cell computation, verification suites, RS tools, tau.

Exit codes: 0 success / all checks pass, 1 a verification failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cells import compute_cells
from .coxeter import CoxeterSystem, GroupTooLargeError
from .hecke import compute_kl_table
from .pcanonical import (
    PCanValidationError,
    identity_table,
    load_fixture,
    load_table,
)
from .stars import tau_partition, tau_tilde_partition
from .typea import parse_one_line, rs_correspondence
from . import verify as verify_mod


def _build_system(args) -> CoxeterSystem:
    if args.type:
        return CoxeterSystem.from_type(args.type, cap=args.cap)
    if args.cartan:
        path = Path(args.cartan)
        spec = json.loads(path.read_text()) if path.exists() else json.loads(args.cartan)
        if isinstance(spec, list):
            spec = {"cartan": spec}
        return CoxeterSystem.from_spec(spec, cap=args.cap)
    raise SystemExit2("one of --type or --cartan is required")


class SystemExit2(Exception):
    """Usage error, mapped to exit code 2."""


def _build_table(args, system, kl):
    if args.p == 0:
        if args.table or args.fixture:
            raise SystemExit2("p = 0 needs no table")
        return identity_table(system)
    if args.table:
        return load_table(args.table, system, kl)
    if args.fixture:
        return load_fixture(args.fixture, system, kl)
    raise SystemExit2(f"p = {args.p} needs --table FILE or --fixture NAME")


def _emit(text: str, args) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def cmd_cells(args) -> int:
    system = _build_system(args)
    kl = compute_kl_table(system)
    table = _build_table(args, system, kl)
    side = {"2": "two-sided", "lr": "two-sided"}.get(args.side, args.side)
    partition = compute_cells(table, kl, side)
    if args.format == "json":
        _emit(json.dumps(partition.to_json_obj(system), indent=2), args)
    elif args.format == "dot":
        _emit(partition.to_dot(system), args)
    else:
        lines = [f"{len(partition.cells)} {side} cells at p = {table.prime}:"]
        for i, cell in enumerate(partition.cells):
            words = ", ".join(sorted(
                (system.id_to_digits(w) or "e" for w in cell),
                key=lambda d: (len(d), d)))
            lines.append(f"  [{i}] {{{words}}}")
        lines.append("Hasse edges: " + ", ".join(
            f"{i}->{j}" for (i, j) in sorted(partition.hasse_edges)))
        _emit("\n".join(lines), args)
    return 0


def cmd_verify(args) -> int:
    reports = verify_mod.run_suite(args.suite, typea_n=args.n)
    failures = 0
    for rep in reports:
        status = "pass" if rep.ok else "FAIL"
        print(f"[{status}] {rep.name} ({rep.checked} checks)")
        if not rep.ok:
            failures += 1
            for v in rep.violations[:5]:
                print(f"        {v}")
    print(f"{len(reports) - failures}/{len(reports)} checks passed")
    return 0 if failures == 0 else 1


def cmd_rs(args) -> int:
    perm = parse_one_line(args.permutation)
    p, q = rs_correspondence(perm)
    if args.format == "json":
        print(json.dumps({"P": [list(r) for r in p], "Q": [list(r) for r in q]}))
    else:
        print("P =", [list(r) for r in p])
        print("Q =", [list(r) for r in q])
    return 0


def cmd_tau(args) -> int:
    system = _build_system(args)
    part = tau_tilde_partition(system) if args.tilde else tau_partition(system)
    kind = "tau-tilde" if args.tilde else "tau"
    if args.format == "json":
        obj = {
            "kind": kind,
            "stabilized_at": part.stabilized_at,
            "classes": [sorted(system.id_to_digits(w) or "e" for w in c)
                        for c in part.classes],
        }
        _emit(json.dumps(obj, indent=2), args)
    else:
        lines = [f"{len(part.classes)} {kind} classes "
                 f"(stable after {part.stabilized_at} rounds):"]
        for c in part.classes:
            words = ", ".join(sorted((system.id_to_digits(w) or "e" for w in c),
                                     key=lambda d: (len(d), d)))
            lines.append(f"  {{{words}}}")
        _emit("\n".join(lines), args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcells",
        description="Exact cell computations for Hecke algebras of finite "
                    "crystallographic Coxeter groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_group_args(p):
        p.add_argument("--type", help="type label, e.g. A3, B2, C3, G2")
        p.add_argument("--cartan", help="Cartan matrix as JSON (inline or file)")
        p.add_argument("--cap", type=int, default=10**6,
                       help="element cap for the group closure")

    p = sub.add_parser("cells", help="compute a cell partition")
    add_group_args(p)
    p.add_argument("--p", type=int, default=0, help="prime (0 = KL basis)")
    p.add_argument("--fixture", help="name of a shipped table (e.g. c3_p2)")
    p.add_argument("--table", help="path to a table JSON file")
    p.add_argument("--side", default="right",
                   choices=["left", "right", "two-sided", "2", "lr"])
    p.add_argument("--format", default="text", choices=["text", "json", "dot"])
    p.add_argument("--out", help="write output to this file")
    p.set_defaults(fn=cmd_cells)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite",
                   choices=["b2", "g2", "c3", "typea", "stars", "parabolic", "all"])
    p.add_argument("--n", type=int, default=5,
                   help="largest symmetric group S_n for the typea suite")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("rs", help="Robinson-Schensted symbols of a permutation")
    p.add_argument("permutation", help='one-line notation, e.g. "312"')
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(fn=cmd_rs)

    p = sub.add_parser("tau", help="generalized tau invariant classes")
    add_group_args(p)
    p.add_argument("--tilde", action="store_true",
                   help="use the star-image variant over all finite bonds")
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.add_argument("--out", help="write output to this file")
    p.set_defaults(fn=cmd_tau)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (SystemExit2, ValueError) as e:
        if isinstance(e, PCanValidationError):
            print(f"error: {e}", file=sys.stderr)
            return 1
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (GroupTooLargeError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
