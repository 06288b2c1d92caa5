"""Command line front end.

Exit codes: 0 success, 1 infeasible instance or failed verification,
2 input error, 3 a size cap was exceeded. Caps are read from the
``DELTAIP_BOX_CAP`` and ``DELTAIP_NODE_CAP`` environment variables.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import formats
from .colpipe import solve_two_per_column
from .exactmat import RationalMatrix, max_abs_subdeterminant
from .instances import (GenerationFailed, elementary_wall, escher_wall, k4_projective_fixture,
                        random_two_per_column_ip, random_two_per_row_ip)
from .model import INFEASIBLE
from .rowpipe import solve_two_per_row
from .stableset.analysis import oct_brute, ocp_brute, resilience_check
from .stableset.solvers import CapExceeded, max_weight_stable_set
from .verify import SUITES, run_suite

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _certified_delta(A: RationalMatrix, claimed: int | None) -> int:
    cert = max_abs_subdeterminant(A)
    found = max(int(cert.delta), 1)
    if claimed is None:
        if not cert.exhaustive:
            raise InputError("matrix too large to certify; pass --delta")
        return found
    if claimed < found:
        raise InputError(f"--delta {claimed} is below a subdeterminant of size {found}")
    return claimed


def cmd_solve_ip(args) -> int:
    ip = formats.parse_ip(_read(args.file))
    if not ip.A.is_integral():
        raise InputError("constraint matrix must be integral")
    delta = _certified_delta(ip.A, args.delta)
    solver = solve_two_per_row if args.rows else solve_two_per_column
    try:
        res = solver(ip, delta)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    print(formats.result_to_json(res))
    return EXIT_INFEASIBLE if res.status == INFEASIBLE else EXIT_OK


def cmd_solve_stableset(args) -> int:
    gf = formats.parse_graph(_read(args.file))
    sol = max_weight_stable_set(gf.graph, gf.vertex_weights())
    print(formats.dumps({"vertices": list(sol.vertices), "weight": sol.value}))
    return EXIT_OK


def cmd_analyze(args) -> int:
    text = _read(args.file)
    if args.what == "delta":
        first = formats._lines(text)[:1]
        if first and first[0].startswith("IP"):
            A = formats.parse_ip(text).A
        else:
            A = formats.parse_graph(text).graph.incidence_matrix()
        cert = max_abs_subdeterminant(A)
        suffix = "" if cert.exhaustive else " (lower bound, search capped)"
        print(f"delta = {cert.delta}{suffix}")
        return EXIT_OK
    g = formats.parse_graph(text).graph
    if args.what == "ocp":
        print(f"ocp = {ocp_brute(g)}")
    elif args.what == "oct":
        print(f"oct = {oct_brute(g)}")
    else:
        res = resilience_check(g, args.rho)
        verdict = "resilient" if res.resilient else f"not resilient, remove {list(res.witness)}"
        print(f"{args.rho}-{verdict} (ocp = {res.ocp})")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "wall":
        out = formats.format_graph(elementary_wall(args.height).graph)
    elif args.kind == "escher":
        out = formats.format_graph(escher_wall(args.height).graph)
    elif args.kind == "k4n1":
        out = formats.format_embed(k4_projective_fixture())
    else:
        make = random_two_per_column_ip if args.cols else random_two_per_row_ip
        out = formats.format_ip(make(args.seed, args.n, args.m, args.delta).ip)
    sys.stdout.write(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.trials, args.seed)
    passed = sum(r.ok for r in results)
    for i, r in enumerate(results):
        if not r.ok:
            print(f"trial {i} (seed {args.seed + i}): {r.detail}")
    print(f"{'PASS' if passed == len(results) else 'FAIL'} {passed}/{len(results)}")
    return EXIT_OK if passed == len(results) else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="deltaip", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve-ip", help="solve an IP file exactly through a reduction pipeline")
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--rows", action="store_true", help="at most two nonzeros per row")
    mode.add_argument("--cols", action="store_true", help="at most two nonzeros per column")
    s.add_argument("--delta", type=int, help="subdeterminant bound (certified if omitted)")
    s.add_argument("file")
    s.set_defaults(func=cmd_solve_ip)

    s = sub.add_parser("solve-stableset", help="maximum weight stable set of a GRAPH file")
    s.add_argument("file")
    s.set_defaults(func=cmd_solve_stableset)

    s = sub.add_parser("analyze", help="odd cycle numbers, subdeterminants, resilience")
    s.add_argument("what", choices=("ocp", "oct", "delta", "resilience"))
    s.add_argument("file")
    s.add_argument("--rho", type=int, default=1)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("gen", help="write a generated instance to stdout")
    s.add_argument("kind", choices=("wall", "escher", "random-ip", "k4n1"))
    s.add_argument("height", type=int, nargs="?", default=3)
    s.add_argument("--cols", action="store_true", help="random-ip: two nonzeros per column")
    s.add_argument("--n", type=int, default=5)
    s.add_argument("--m", type=int, default=6)
    s.add_argument("--delta", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify", help="seeded randomized self-checks against oracles")
    s.add_argument("suite", choices=tuple(SUITES))
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, formats.FormatError, GenerationFailed, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
