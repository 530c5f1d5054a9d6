"""Krom-side machinery: resolution-based entailment, trimmed resolution

closures, the solution checker over a strong Krom backdoor, and the SAT
encoding built from closure-membership constants.

For Krom formulas binary resolution is a decision procedure: the
closure is polynomial and contains the empty clause exactly for the
unsatisfiable ones, and it contains every prime implicate, so unit
entailment and entailment-through-one-hypothesis reduce to membership
of {m} or {-h, m}.  Those membership bits are constants at encoding
time; only which hypotheses are selected stays symbolic.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .backdoor import BackdoorSet, backdoor_assignments, require_backdoor
from .encoding import BLOCK_CAP, Encoding, EncodingBuilder
from .errors import BackdoorError, CapExceeded
from .formula import (
    Clause,
    CnfFormula,
    EMPTY_CLAUSE,
    Literal,
    Variable,
    is_krom,
    neg,
    pos,
    reduct,
    resolution_closure,
)
from .instance import AbductionInstance
from . import proptree as pt


def krom_entails(
    formula: CnfFormula, assumptions: Iterable[Literal], goal: Literal
) -> bool:
    """formula + assumptions entails goal, decided by resolution."""
    if not is_krom(formula):
        raise ValueError("krom_entails needs a Krom formula")
    clauses = list(formula.clauses)
    clauses.extend(Clause([lit]) for lit in assumptions)
    clauses.append(Clause([goal.negate()]))
    return EMPTY_CLAUSE in resolution_closure(clauses)


def krom_consistent(formula: CnfFormula, assumptions: Iterable[Literal]) -> bool:
    if not is_krom(formula):
        raise ValueError("krom_consistent needs a Krom formula")
    clauses = list(formula.clauses)
    clauses.extend(Clause([lit]) for lit in assumptions)
    return EMPTY_CLAUSE not in resolution_closure(clauses)


def trimres(inst: AbductionInstance, tau) -> FrozenSet[Clause]:
    """Resolution closure of the reduct, trimmed to clauses whose

    variables all come from (H u M) minus the assigned ones; collapses
    to {empty} as soon as the closure derives the empty clause."""
    red = reduct(inst.theory, tau)
    if not is_krom(red):
        raise BackdoorError("reduct escaped the Krom class")
    closure = resolution_closure(red.clauses)
    if EMPTY_CLAUSE in closure:
        return frozenset((EMPTY_CLAUSE,))
    allowed = (set(inst.hypotheses) | set(inst.manifestations)) - set(tau)
    return frozenset(c for c in closure if c.variables() <= allowed)


def check_solution_krom(
    inst: AbductionInstance, backdoor: BackdoorSet, names: Iterable[str]
) -> bool:
    """Decide whether the named hypotheses are a solution, without SAT.

    Per backdoor assignment compatible with S: when the reduct plus S
    is consistent and no manifestation was assigned false, each open
    manifestation must follow from the reduct alone or from the reduct
    plus a single selected hypothesis (enough, by the closure's prime
    implicates, for Krom reducts); when a manifestation was assigned
    false, only an inconsistent reduct-plus-S saves entailment.  Blocks
    where the reduct plus S is inconsistent entail vacuously.
    """
    if backdoor.base_class != "krom":
        raise ValueError("check_solution_krom needs a Krom backdoor")
    require_backdoor(inst.theory, backdoor)
    s_vars = inst.solution_vars(names)
    consistent = False
    for _, tau in backdoor_assignments(backdoor.variables):
        if any(not tau[h] for h in s_vars if h in tau):
            continue
        red = reduct(inst.theory, tau)
        open_s = [h for h in s_vars if h not in tau]
        sat_here = krom_consistent(red, [pos(h) for h in open_s])
        if sat_here:
            consistent = True
        else:
            continue  # inconsistent block entails anything
        if all(tau[m] for m in inst.manifestations if m in tau):
            for m in inst.manifestations:
                if m in tau:
                    continue
                if krom_entails(red, [], pos(m)):
                    continue
                if not any(
                    krom_entails(red, [pos(h)], pos(m)) for h in open_s
                ):
                    return False
        else:
            return False  # some manifestation assigned false, block consistent
    return consistent


def build_krom_parts(
    builder: EncodingBuilder, backdoor: BackdoorSet, strict_paper: bool = False
) -> None:
    """Append the entailment blocks for every backdoor assignment.

    Per block the trimmed closure is a table of constants.  With every
    backdoor manifestation true, each open manifestation must be in the
    closure as a unit or reachable through one selected hypothesis; by
    default the alternative that the reduct plus S is inconsistent is
    also allowed (entailment is then vacuous), which strict_paper drops.
    With some backdoor manifestation false, that inconsistency is the
    only way to keep S a solution.
    """
    inst = builder.inst
    hyps = inst.hypotheses
    for i, tau in backdoor_assignments(backdoor.variables):
        table = trimres(inst, tau)
        open_hyps = [h for h in hyps if h not in tau]
        open_mans = [m for m in inst.manifestations if m not in tau]

        inconsistency: List[pt.PropFormula] = []
        if EMPTY_CLAUSE in table:
            inconsistency.append(pt.TRUE)
        for h in open_hyps:
            if Clause([neg(h)]) in table:
                inconsistency.append(builder.picker(h))
        for h1, h2 in combinations(open_hyps, 2):
            if Clause([neg(h1), neg(h2)]) in table:
                inconsistency.append(
                    pt.conj([builder.picker(h1), builder.picker(h2)])
                )

        def entailed(m: Variable) -> pt.PropFormula:
            ways: List[pt.PropFormula] = []
            if Clause([pos(m)]) in table:
                ways.append(pt.TRUE)
            for h in open_hyps:
                if Clause([neg(h), pos(m)]) in table:
                    ways.append(builder.picker(h))
            if not strict_paper:
                ways.extend(inconsistency)
            return pt.disj(ways)

        guard = pt.conj(
            pt.implies(builder.picker(h), pt.Const(tau[h]))
            for h in hyps
            if h in tau
        )
        if all(tau[m] for m in inst.manifestations if m in tau):
            entail = pt.conj(entailed(m) for m in open_mans)
        else:
            entail = pt.disj(inconsistency)
        builder.parts.append(pt.implies(guard, entail))


def encode_krom_solv(
    inst: AbductionInstance,
    backdoor: BackdoorSet,
    decoupled: bool = False,
    strict_paper: bool = False,
    at_most: Optional[int] = None,
) -> Encoding:
    """SAT encoding whose models' solution projections are exactly the

    solutions of the instance (selector projection when decoupled)."""
    if backdoor.base_class != "krom":
        raise ValueError("encode_krom_solv needs a Krom backdoor")
    if len(backdoor) > BLOCK_CAP:
        raise CapExceeded(f"encoding limited to {BLOCK_CAP} backdoor variables")
    require_backdoor(inst.theory, backdoor)
    builder = EncodingBuilder(inst)
    if decoupled:
        builder.add_selectors()
    builder.add_theory()
    build_krom_parts(builder, backdoor, strict_paper=strict_paper)
    return builder.finalize(
        "krom",
        "decoupled" if decoupled else "direct",
        backdoor.names,
        at_most=at_most,
    )
