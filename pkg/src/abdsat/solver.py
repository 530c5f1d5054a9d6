"""SAT backend: DIMACS, a built-in DPLL solver, external solvers,

model enumeration, and the sequential at-most-k counter.

Any external solver that reads DIMACS and prints competition-style
output (`s SATISFIABLE` / `s UNSATISFIABLE`, model on `v ` lines) can be
plugged in through a command template; exit codes 10/20 are accepted as
a fallback status when no `s` line appears.  Every satisfying model is
re-checked against the CNF before being returned, whichever solver
produced it.
"""

from __future__ import annotations

import shlex
import subprocess
import tempfile
import os
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import SolverNotFound, SolverOutputError
from .formula import (
    Assignment,
    Clause,
    CnfFormula,
    Variable,
    VariablePool,
    evaluate,
    neg,
    pos,
)


@dataclass(frozen=True)
class SolverResult:
    status: str  # "sat" | "unsat"
    model: Optional[Dict[Variable, bool]] = None

    @property
    def is_sat(self) -> bool:
        return self.status == "sat"


@dataclass(frozen=True)
class SolverConfig:
    """command is a template such as 'minisat -verb=0 {file}'; None means

    the built-in solver."""

    command: Optional[str] = None


def to_dimacs(cnf: CnfFormula) -> str:
    """Serialize with 1-based numbering: variable index i becomes i+1."""
    lines = [f"p cnf {len(cnf.variables)} {len(cnf.clauses)}"]
    for clause in cnf.clauses:
        nums = [
            str(lit.var.index + 1) if lit.positive else str(-(lit.var.index + 1))
            for lit in clause
        ]
        nums.append("0")
        lines.append(" ".join(nums))
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """Read a DIMACS file back into a CnfFormula (names are the numbers)."""
    num_vars = None
    clauses: List[Clause] = []
    pending: List[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise SolverOutputError(f"bad DIMACS header: {line!r}")
            num_vars = int(parts[2])
            continue
        pending.extend(int(tok) for tok in line.split())
    if num_vars is None:
        raise SolverOutputError("missing DIMACS header")
    variables = tuple(Variable(str(i + 1), i) for i in range(num_vars))

    def as_literal(num: int):
        var = variables[abs(num) - 1]
        return pos(var) if num > 0 else neg(var)

    current: List[int] = []
    for num in pending:
        if num == 0:
            clauses.append(Clause(as_literal(n) for n in current))
            current = []
        else:
            if abs(num) > num_vars:
                raise SolverOutputError(f"literal {num} exceeds declared variables")
            current.append(num)
    if current:
        raise SolverOutputError("trailing literals without terminating 0")
    return CnfFormula(clauses, variables)


def builtin_solve(cnf: CnfFormula) -> SolverResult:
    """Plain DPLL: unit propagation plus branching on the first unassigned

    occurring variable, positive phase first.  Deterministic."""
    clauses: List[List[int]] = []
    for cl in cnf.clauses:
        if cl.is_tautological:
            continue
        if cl.is_empty:
            return SolverResult("unsat")
        clauses.append(
            [lit.var.index + 1 if lit.positive else -(lit.var.index + 1) for lit in cl]
        )
    nvars = len(cnf.variables)
    occ: Dict[int, List[int]] = {}
    occurring: Set[int] = set()
    for ci, cl in enumerate(clauses):
        for l in cl:
            occ.setdefault(-l, []).append(ci)
            occurring.add(abs(l))
    order = sorted(occurring)
    assign: List[Optional[bool]] = [None] * (nvars + 1)
    trail: List[int] = []

    def propagate(start: List[int]) -> bool:
        pending = list(start)
        while pending:
            lit = pending.pop()
            v, val = abs(lit), lit > 0
            known = assign[v]
            if known is not None:
                if known != val:
                    return False
                continue
            assign[v] = val
            trail.append(v)
            for ci in occ.get(lit, ()):
                cl = clauses[ci]
                satisfied = False
                unit = 0
                free = 0
                for l in cl:
                    a = assign[abs(l)]
                    if a is None:
                        free += 1
                        if free > 1:
                            break
                        unit = l
                    elif a == (l > 0):
                        satisfied = True
                        break
                if satisfied or free > 1:
                    continue
                if free == 0:
                    return False
                pending.append(unit)
        return True

    def extract_model() -> Dict[Variable, bool]:
        return {
            var: bool(assign[var.index + 1])
            if assign[var.index + 1] is not None
            else False
            for var in cnf.variables
        }

    if not propagate([cl[0] for cl in clauses if len(cl) == 1]):
        return SolverResult("unsat")
    decisions: List[Tuple[int, int, bool]] = []  # (trail mark, var, flipped)
    while True:
        branch = next((v for v in order if assign[v] is None), None)
        if branch is None:
            return SolverResult("sat", extract_model())
        decisions.append((len(trail), branch, False))
        ok = propagate([branch])
        while not ok:
            flipped_one = False
            while decisions:
                mark, dv, flipped = decisions.pop()
                for x in trail[mark:]:
                    assign[x] = None
                del trail[mark:]
                if not flipped:
                    decisions.append((mark, dv, True))
                    ok = propagate([-dv])
                    flipped_one = True
                    break
            if not flipped_one:
                return SolverResult("unsat")


def _run_external(cnf: CnfFormula, command: str) -> SolverResult:
    handle = tempfile.NamedTemporaryFile(
        mode="w", suffix=".cnf", prefix="abdsat_", delete=False
    )
    try:
        handle.write(to_dimacs(cnf))
        handle.close()
        if "{file}" in command:
            argv = [arg.replace("{file}", handle.name) for arg in shlex.split(command)]
        else:
            argv = shlex.split(command) + [handle.name]
        try:
            proc = subprocess.run(
                argv, capture_output=True, text=True, timeout=600
            )
        except FileNotFoundError as exc:
            raise SolverNotFound(f"cannot run {argv[0]!r}") from exc
    finally:
        os.unlink(handle.name)

    status: Optional[str] = None
    values: List[int] = []
    for line in proc.stdout.splitlines():
        if line.startswith("s "):
            verdict = line[2:].strip()
            if verdict == "SATISFIABLE":
                status = "sat"
            elif verdict == "UNSATISFIABLE":
                status = "unsat"
        elif line.startswith("v "):
            try:
                values.extend(int(tok) for tok in line[2:].split())
            except ValueError as exc:
                raise SolverOutputError(f"bad value line: {line!r}") from exc
    if status is None:
        if proc.returncode == 10:
            status = "sat"
        elif proc.returncode == 20:
            status = "unsat"
        else:
            raise SolverOutputError(
                f"no status line and exit code {proc.returncode}; "
                f"stderr: {proc.stderr.strip()[:200]!r}"
            )
    if status == "unsat":
        return SolverResult("unsat")
    model = {var: False for var in cnf.variables}
    for num in values:
        if num == 0:
            continue
        if abs(num) > len(cnf.variables):
            raise SolverOutputError(f"model literal {num} out of range")
        model[cnf.variables[abs(num) - 1]] = num > 0
    return SolverResult("sat", model)


def solve(cnf: CnfFormula, config: Optional[SolverConfig] = None) -> SolverResult:
    """Solve through the configured backend and re-verify any model."""
    if config is None or config.command is None:
        result = builtin_solve(cnf)
    else:
        result = _run_external(cnf, config.command)
    if result.is_sat and not evaluate(cnf, result.model):
        raise SolverOutputError("solver returned an assignment that is not a model")
    return result


def enumerate_models(
    cnf: CnfFormula,
    project: Sequence[Variable],
    config: Optional[SolverConfig] = None,
) -> Iterator[Dict[Variable, bool]]:
    """All models, distinct on the projection variables, via blocking clauses."""
    current = cnf
    while True:
        result = solve(current, config)
        if not result.is_sat:
            return
        yield result.model
        block = Clause(
            neg(v) if result.model[v] else pos(v) for v in project
        )
        if block.is_empty:
            return
        current = current.with_clauses([block])


def at_most_k(
    variables: Sequence[Variable], k: int, pool: VariablePool
) -> List[Clause]:
    """Sequential-counter clauses forcing at most k of the variables true.

    O(len(variables) * k) clauses; auxiliary register variables come
    from the pool.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    items = list(variables)
    n = len(items)
    if k == 0:
        return [Clause([neg(v)]) for v in items]
    if k >= n:
        return []
    regs = [[pool.fresh_numbered("@c") for _ in range(k)] for _ in range(n - 1)]
    out: List[Clause] = []
    out.append(Clause([neg(items[0]), pos(regs[0][0])]))
    for j in range(1, k):
        out.append(Clause([neg(regs[0][j])]))
    for i in range(1, n - 1):
        out.append(Clause([neg(items[i]), pos(regs[i][0])]))
        out.append(Clause([neg(regs[i - 1][0]), pos(regs[i][0])]))
        for j in range(1, k):
            out.append(
                Clause([neg(items[i]), neg(regs[i - 1][j - 1]), pos(regs[i][j])])
            )
            out.append(Clause([neg(regs[i - 1][j]), pos(regs[i][j])]))
        out.append(Clause([neg(items[i]), neg(regs[i - 1][k - 1])]))
    out.append(Clause([neg(items[n - 1]), neg(regs[n - 2][k - 1])]))
    return out
