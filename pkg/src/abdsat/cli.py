"""Command line front end.

Subcommands:
  solve       find one solution (optionally subset-minimal or size-bounded)
  enumerate   list all solutions, or all subset-minimal ones
  check       test a candidate hypothesis set
  detect      search for a small strong backdoor
  encode      write the CNF encoding as DIMACS plus a role sidecar
  relevance   does some (minimal) solution contain a given hypothesis
  report      encoding-size scaling study with CSV and figures

Exit codes: 0 -> the query was answered (including "no"), 1 -> bad usage
or unreadable instance, 2 -> backdoor, solver, or self-check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional, Sequence

from .backdoor import BackdoorSet
from .errors import AbdsatError, CapExceeded, InstanceError, SolverError
from .instance import AbductionInstance, load_instance
from .oracle import oracle_is_solution, oracle_solve, oracle_subset_minimal
from .pipeline import (
    DEFAULT_DETECT_CEILING,
    check_solution,
    encode_instance,
    enumerate_minimal_solutions,
    enumerate_solutions,
    pick_backdoor,
    relevance,
    solve_instance,
)
from .solver import SolverConfig, to_dimacs
from .encoding import roles_json


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; remap to 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_common(sub: argparse.ArgumentParser, with_solver: bool = True) -> None:
    sub.add_argument("instance", help="instance file (.abd text or .json)")
    sub.add_argument(
        "--class",
        dest="base_class",
        choices=("horn", "krom", "auto"),
        default="auto",
        help="target clause class (default: auto)",
    )
    sub.add_argument(
        "--backdoor",
        help="comma separated variable names to use as the backdoor",
    )
    sub.add_argument(
        "--detect",
        "--max-k",
        dest="max_k",
        type=int,
        default=None,
        help=f"detection size ceiling (default {DEFAULT_DETECT_CEILING})",
    )
    if with_solver:
        group = sub.add_mutually_exclusive_group()
        group.add_argument("--solver", help="external solver command, {file} for input")
        group.add_argument(
            "--builtin", action="store_true", help="force the built-in solver"
        )
    sub.add_argument("--strict-paper", action="store_true", help=argparse.SUPPRESS)
    sub.add_argument("--json", action="store_true", help="machine readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="abdsat", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("solve", help="find one solution")
    _add_common(p)
    p.add_argument("--minimal", action="store_true", help="subset-minimal solution")
    p.add_argument(
        "--at-most-k", type=int, default=None, help="bound the solution size"
    )
    p.add_argument(
        "--self-check",
        action="store_true",
        help="verify the answer against exhaustive search when small enough",
    )

    p = subs.add_parser("enumerate", help="list solutions")
    _add_common(p)
    p.add_argument("--minimal", action="store_true", help="subset-minimal only")
    p.add_argument(
        "--at-most-k", type=int, default=None, help="bound the solution size"
    )
    p.add_argument("--self-check", action="store_true")

    p = subs.add_parser("check", help="test a candidate solution")
    _add_common(p, with_solver=False)
    p.add_argument(
        "--solution",
        required=True,
        help="comma separated hypothesis names; empty string for the empty set",
    )

    p = subs.add_parser("detect", help="find a small strong backdoor")
    _add_common(p, with_solver=False)

    p = subs.add_parser("encode", help="write DIMACS and role sidecar")
    _add_common(p, with_solver=False)
    p.add_argument("-o", "--output", required=True, help="output .cnf path")
    p.add_argument(
        "--decoupled",
        action="store_true",
        help="add selector variables on top of the hypothesis variables",
    )
    p.add_argument(
        "--minimal",
        action="store_true",
        help="encode minimal-solution-through-hypothesis (needs --hypothesis)",
    )
    p.add_argument("--hypothesis", "--h", help="distinguished hypothesis for --minimal")
    p.add_argument(
        "--at-most-k", type=int, default=None, help="bound the solution size"
    )

    p = subs.add_parser("relevance", help="hypothesis membership in some solution")
    _add_common(p)
    p.add_argument("--hypothesis", "--h", required=True, help="hypothesis name")
    p.add_argument(
        "--minimal",
        action="store_true",
        help="restrict to subset-minimal solutions",
    )

    p = subs.add_parser("report", help="scaling study: CSV plus PNG figures")
    p.add_argument("--out-dir", default="report", help="output directory")
    p.add_argument("--n", type=int, default=20, help="chain length for the k sweep")
    p.add_argument(
        "--double-n", type=int, default=30, help="base length for the n doubling"
    )
    p.add_argument("--k-max", type=int, default=6, help="largest backdoor size")
    p.add_argument("--json", action="store_true")
    return parser


def _load(path: str) -> AbductionInstance:
    try:
        return load_instance(path)
    except OSError as exc:
        raise InstanceError(str(exc)) from exc


def _split_names(raw: str) -> List[str]:
    return [part.strip() for part in raw.split(",") if part.strip()]


def _backdoor_for(args, inst: AbductionInstance) -> BackdoorSet:
    names = _split_names(args.backdoor) if args.backdoor else None
    return pick_backdoor(
        inst, base_class=args.base_class, names=names, max_size=args.max_k
    )


def _config(args) -> Optional[SolverConfig]:
    if getattr(args, "builtin", False):
        return SolverConfig(None)
    command = getattr(args, "solver", None)
    if command:
        return SolverConfig(command)
    return None


def _format_solution(inst: AbductionInstance, names) -> str:
    ordered = [h for h in inst.hyp_names if h in names]
    return ", ".join(ordered) if ordered else "(empty)"


def _solution_list(inst: AbductionInstance, names) -> List[str]:
    return [h for h in inst.hyp_names if h in names]


def _emit(args, payload: dict, text_lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _backdoor_payload(backdoor: BackdoorSet) -> dict:
    return {"variables": list(backdoor.names), "class": backdoor.base_class}


def cmd_solve(args) -> int:
    inst = _load(args.instance)
    backdoor = _backdoor_for(args, inst)
    config = _config(args)
    start = time.perf_counter()
    if args.minimal:
        candidates = enumerate_minimal_solutions(
            inst, backdoor, config=config, strict_paper=args.strict_paper
        )
        if args.at_most_k is not None:
            candidates = [s for s in candidates if len(s) <= args.at_most_k]
        solution = candidates[0] if candidates else None
        enc_for_stats = encode_instance(inst, backdoor, strict_paper=args.strict_paper)
        stats = enc_for_stats.stats()
    else:
        solution, encoding = solve_instance(
            inst,
            backdoor,
            config=config,
            strict_paper=args.strict_paper,
            at_most=args.at_most_k,
        )
        stats = encoding.stats()
    elapsed = (time.perf_counter() - start) * 1000.0

    self_check = None
    if args.self_check:
        self_check = _self_check_solve(inst, solution, args)
        if self_check == "failed":
            print("self-check failed", file=sys.stderr)
            return 2

    status = "satisfiable" if solution is not None else "unsatisfiable"
    payload = {
        "command": "solve",
        "instance": args.instance,
        "backdoor": _backdoor_payload(backdoor),
        "encoding": stats,
        "status": status,
        "solution": _solution_list(inst, solution) if solution is not None else None,
        "minimal": args.minimal,
        "wall_ms": round(elapsed, 2),
        "self_check": self_check,
    }
    lines = [
        f"backdoor: {', '.join(backdoor.names) or '(empty)'} (class {backdoor.base_class})",
        f"encoding: {stats['variables']} variables, {stats['clauses']} clauses",
        f"status: {status}",
    ]
    if solution is not None:
        lines.append(f"solution: {_format_solution(inst, solution)}")
    if self_check:
        lines.append(f"self-check: {self_check}")
    _emit(args, payload, lines)
    return 0


def _self_check_solve(inst, solution, args) -> str:
    try:
        if solution is not None:
            ok = oracle_is_solution(inst, solution)
            if ok and args.minimal:
                ok = frozenset(solution) in oracle_subset_minimal(inst)
            if ok and args.at_most_k is not None:
                ok = len(solution) <= args.at_most_k
        else:
            sols = oracle_subset_minimal(inst)
            if args.at_most_k is not None:
                sols = [s for s in sols if len(s) <= args.at_most_k]
            ok = not sols
    except CapExceeded:
        return "skipped"
    return "ok" if ok else "failed"


def cmd_enumerate(args) -> int:
    inst = _load(args.instance)
    backdoor = _backdoor_for(args, inst)
    config = _config(args)
    if args.minimal:
        solutions = list(
            enumerate_minimal_solutions(
                inst, backdoor, config=config, strict_paper=args.strict_paper
            )
        )
        if args.at_most_k is not None:
            solutions = [s for s in solutions if len(s) <= args.at_most_k]
    else:
        solutions = list(
            enumerate_solutions(
                inst,
                backdoor,
                config=config,
                strict_paper=args.strict_paper,
                at_most=args.at_most_k,
            )
        )
    solutions.sort(key=lambda s: (len(s), sorted(s)))

    if args.self_check:
        verdict = _self_check_enumerate(inst, solutions, args)
        if verdict == "failed":
            print("self-check failed", file=sys.stderr)
            return 2

    payload = {
        "command": "enumerate",
        "instance": args.instance,
        "backdoor": _backdoor_payload(backdoor),
        "minimal": args.minimal,
        "count": len(solutions),
        "solutions": [_solution_list(inst, s) for s in solutions],
    }
    lines = [_format_solution(inst, s) for s in solutions]
    _emit(args, payload, lines)
    return 0


def _self_check_enumerate(inst, solutions, args) -> str:
    try:
        if args.minimal:
            expected = set(oracle_subset_minimal(inst))
        else:
            expected = set(oracle_solve(inst))
        if args.at_most_k is not None:
            expected = {s for s in expected if len(s) <= args.at_most_k}
    except CapExceeded:
        return "skipped"
    return "ok" if set(solutions) == expected else "failed"


def cmd_check(args) -> int:
    inst = _load(args.instance)
    backdoor = _backdoor_for(args, inst)
    names = _split_names(args.solution)
    verdict = check_solution(inst, backdoor, names)
    payload = {
        "command": "check",
        "instance": args.instance,
        "solution": sorted(names),
        "is_solution": verdict,
    }
    _emit(args, payload, ["yes" if verdict else "no"])
    return 0


def cmd_detect(args) -> int:
    inst = _load(args.instance)
    if args.backdoor:
        backdoor = _backdoor_for(args, inst)
        found = True
    else:
        try:
            backdoor = _backdoor_for(args, inst)
            found = True
        except AbdsatError:
            backdoor = None
            found = False
    ceiling = args.max_k if args.max_k is not None else DEFAULT_DETECT_CEILING
    payload = {
        "command": "detect",
        "instance": args.instance,
        "max_size": ceiling,
        "found": found,
        "backdoor": _backdoor_payload(backdoor) if found else None,
    }
    if found:
        lines = [
            f"backdoor: {', '.join(backdoor.names) or '(empty)'}"
            f" (class {backdoor.base_class}, size {len(backdoor)})"
        ]
    else:
        lines = [f"backdoor: none within size {ceiling}"]
    _emit(args, payload, lines)
    return 0


def cmd_encode(args) -> int:
    inst = _load(args.instance)
    backdoor = _backdoor_for(args, inst)
    if args.minimal and not args.hypothesis:
        raise InstanceError("--minimal needs --hypothesis")
    enc = encode_instance(
        inst,
        backdoor,
        decoupled=args.decoupled,
        strict_paper=args.strict_paper,
        minimal_for=args.hypothesis if args.minimal else None,
        at_most=args.at_most_k,
    )
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write(to_dimacs(enc.cnf))
    sidecar = args.output + ".roles.json"
    with open(sidecar, "w", encoding="utf-8") as handle:
        json.dump(roles_json(enc), handle, indent=2)
        handle.write("\n")
    stats = enc.stats()
    payload = {
        "command": "encode",
        "instance": args.instance,
        "backdoor": _backdoor_payload(backdoor),
        "mode": enc.mode,
        "output": args.output,
        "roles": sidecar,
        "variables": stats["variables"],
        "clauses": stats["clauses"],
    }
    lines = [
        f"wrote {args.output} ({stats['variables']} variables,"
        f" {stats['clauses']} clauses)",
        f"wrote {sidecar}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_relevance(args) -> int:
    inst = _load(args.instance)
    backdoor = _backdoor_for(args, inst)
    config = _config(args)
    verdict = relevance(
        inst,
        backdoor,
        args.hypothesis,
        minimal=args.minimal,
        config=config,
        strict_paper=args.strict_paper,
    )
    payload = {
        "command": "relevance",
        "instance": args.instance,
        "hypothesis": args.hypothesis,
        "minimal": args.minimal,
        "relevant": verdict,
    }
    _emit(args, payload, ["yes" if verdict else "no"])
    return 0


def cmd_report(args) -> int:
    from .report import run_report

    result = run_report(
        args.out_dir, n=args.n, double_n=args.double_n, k_max=args.k_max
    )
    payload = {"command": "report", **result}
    lines = [f"wrote {result['csv']}"]
    lines.extend(f"wrote {path}" for path in result["figures"])
    _emit(args, payload, lines)
    return 0


_COMMANDS = {
    "solve": cmd_solve,
    "enumerate": cmd_enumerate,
    "check": cmd_check,
    "detect": cmd_detect,
    "encode": cmd_encode,
    "relevance": cmd_relevance,
    "report": cmd_report,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    def report_error(exc: Exception, code: int) -> int:
        if getattr(args, "json", False):
            print(json.dumps({"error": str(exc), "exit": code}))
        print(f"abdsat: {exc}", file=sys.stderr)
        return code

    try:
        return _COMMANDS[args.command](args)
    except InstanceError as exc:
        return report_error(exc, 1)
    except (AbdsatError, SolverError) as exc:
        return report_error(exc, 2)


if __name__ == "__main__":
    sys.exit(main())
