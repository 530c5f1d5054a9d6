"""Standalone DIMACS solver with SAT-competition output.

Lets the external-solver integration run anywhere: configure the
backend with `python -m abdsat.dimacs_cli {file}` and the subprocess
protocol is exercised end to end even when no third-party solver is
installed.  Exit code 10 means satisfiable, 20 unsatisfiable.
"""

from __future__ import annotations

import sys

from .solver import builtin_solve, parse_dimacs


def main(argv=None) -> int:
    args = sys.argv[1:] if argv is None else list(argv)
    if len(args) != 1:
        print("usage: python -m abdsat.dimacs_cli FILE.cnf", file=sys.stderr)
        return 1
    with open(args[0], "r", encoding="utf-8") as handle:
        cnf = parse_dimacs(handle.read())
    result = builtin_solve(cnf)
    if result.is_sat:
        print("s SATISFIABLE")
        nums = [
            str(var.index + 1) if value else str(-(var.index + 1))
            for var, value in result.model.items()
        ]
        print("v " + " ".join(nums + ["0"]))
        return 10
    print("s UNSATISFIABLE")
    return 20


if __name__ == "__main__":
    sys.exit(main())
