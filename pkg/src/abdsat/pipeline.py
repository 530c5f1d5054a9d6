"""Instance-level operations shared by the CLI and the tests:

backdoor selection, solving, enumeration, checking, and relevance.
"""

from __future__ import annotations

from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .backdoor import (
    BackdoorSet,
    detect_horn_backdoor,
    detect_krom_backdoor,
    require_backdoor,
    smallest_backdoor,
    verify_strong_backdoor,
)
from .encoding import Encoding, decode_solution
from .errors import AbdsatError, BackdoorError, InstanceError
from .formula import Clause, pos
from .horn import check_solution_horn, encode_horn_solv
from .instance import AbductionInstance, Solution
from .krom import check_solution_krom, encode_krom_solv
from .solver import SolverConfig, enumerate_models, solve
from .subsetmin import encode_subsetmin

DEFAULT_DETECT_CEILING = 8


def pick_backdoor(
    inst: AbductionInstance,
    base_class: str = "auto",
    names: Optional[Sequence[str]] = None,
    max_size: Optional[int] = None,
) -> BackdoorSet:
    """Resolve the backdoor to work with.

    Explicit names are verified (for auto, Horn is tried before Krom);
    otherwise both detectors run up to the ceiling and auto keeps the
    class with the smaller set, preferring Horn on ties.
    """
    theory = inst.theory
    if names is not None:
        try:
            variables = [inst.var_by_name(n) for n in names]
        except KeyError as exc:
            raise InstanceError(f"unknown backdoor variable {exc.args[0]!r}")
        classes = ("horn", "krom") if base_class == "auto" else (base_class,)
        for cls in classes:
            candidate = BackdoorSet.for_theory(theory, variables, cls)
            if verify_strong_backdoor(theory, candidate.variables, cls):
                return candidate
        raise BackdoorError(
            f"{{{', '.join(names)}}} does not verify as a strong "
            f"{' or '.join(classes)} backdoor"
        )
    ceiling = DEFAULT_DETECT_CEILING if max_size is None else max_size
    if base_class in ("horn", "krom"):
        found = smallest_backdoor(theory, base_class, ceiling)
        if found is None:
            raise BackdoorError(
                f"no strong {base_class} backdoor of size <= {ceiling}"
            )
        return found
    horn = smallest_backdoor(theory, "horn", ceiling)
    krom = smallest_backdoor(theory, "krom", ceiling)
    if horn is None and krom is None:
        raise BackdoorError(f"no strong backdoor of size <= {ceiling}")
    if krom is None or (horn is not None and len(horn) <= len(krom)):
        return horn
    return krom


def check_solution(
    inst: AbductionInstance, backdoor: BackdoorSet, names: Iterable[str]
) -> bool:
    if backdoor.base_class == "horn":
        return check_solution_horn(inst, backdoor, names)
    return check_solution_krom(inst, backdoor, names)


def encode_instance(
    inst: AbductionInstance,
    backdoor: BackdoorSet,
    decoupled: bool = False,
    strict_paper: bool = False,
    minimal_for: Optional[str] = None,
    at_most: Optional[int] = None,
) -> Encoding:
    if minimal_for is not None:
        return encode_subsetmin(
            inst, backdoor, minimal_for, strict_paper=strict_paper, at_most=at_most
        )
    if backdoor.base_class == "horn":
        return encode_horn_solv(inst, backdoor, decoupled=decoupled, at_most=at_most)
    return encode_krom_solv(
        inst,
        backdoor,
        decoupled=decoupled,
        strict_paper=strict_paper,
        at_most=at_most,
    )


def solve_instance(
    inst: AbductionInstance,
    backdoor: BackdoorSet,
    config: Optional[SolverConfig] = None,
    strict_paper: bool = False,
    at_most: Optional[int] = None,
) -> Tuple[Optional[Solution], Encoding]:
    """One solution (or None when there is none) plus the encoding used.

    A decoded solution is re-verified with the class checker before it
    is returned; a mismatch would mean an encoder bug and raises.
    """
    enc = encode_instance(
        inst,
        backdoor,
        decoupled=at_most is not None,
        strict_paper=strict_paper,
        at_most=at_most,
    )
    result = solve(enc.cnf, config)
    if not result.is_sat:
        return None, enc
    solution = decode_solution(enc, result.model)
    if not check_solution(inst, backdoor, solution):
        raise AbdsatError(
            f"decoded solution {sorted(solution)} fails the class checker"
        )
    return solution, enc


def enumerate_solutions(
    inst: AbductionInstance,
    backdoor: BackdoorSet,
    config: Optional[SolverConfig] = None,
    strict_paper: bool = False,
    at_most: Optional[int] = None,
) -> Iterator[Solution]:
    """All solutions, streamed; always runs the decoupled encoding and

    blocks repeats on the selector projection only."""
    enc = encode_instance(
        inst, backdoor, decoupled=True, strict_paper=strict_paper, at_most=at_most
    )
    project = sorted(enc.solution_vars.values(), key=lambda v: v.index)
    for model in enumerate_models(enc.cnf, project, config):
        yield decode_solution(enc, model)


def enumerate_minimal_solutions(
    inst: AbductionInstance,
    backdoor: BackdoorSet,
    config: Optional[SolverConfig] = None,
    strict_paper: bool = False,
) -> List[Solution]:
    """All subset-minimal solutions: the empty candidate is checked

    directly, the rest come from one subset-minimality encoding per
    distinguished hypothesis, deduplicated."""
    found: Set[Solution] = set()
    if check_solution(inst, backdoor, frozenset()):
        found.add(frozenset())
    else:
        for h in inst.hyp_names:
            enc = encode_instance(
                inst, backdoor, strict_paper=strict_paper, minimal_for=h
            )
            project = sorted(enc.solution_vars.values(), key=lambda v: v.index)
            for model in enumerate_models(enc.cnf, project, config):
                found.add(decode_solution(enc, model))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def relevance(
    inst: AbductionInstance,
    backdoor: BackdoorSet,
    h_star: str,
    minimal: bool = False,
    config: Optional[SolverConfig] = None,
    strict_paper: bool = False,
) -> bool:
    """Does some solution (subset-minimal solution, with minimal=True)

    contain h_star?"""
    if h_star not in inst.hyp_names:
        raise InstanceError(f"{h_star!r} is not a hypothesis")
    if minimal:
        enc = encode_instance(inst, backdoor, strict_paper=strict_paper, minimal_for=h_star)
        return solve(enc.cnf, config).is_sat
    enc = encode_instance(inst, backdoor, decoupled=True, strict_paper=strict_paper)
    forced = enc.cnf.with_clauses([Clause([pos(enc.solution_vars[h_star])])])
    return solve(forced, config).is_sat
