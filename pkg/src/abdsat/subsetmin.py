"""Subset-minimal solution encodings.

On top of the selector-decoupled solvability encoding, one distinguished
hypothesis is forced in and every selected hypothesis h must be
droppable-and-then-failing: a fresh copy of the theory witnesses a model
where the other selected hypotheses hold but the manifestations do not.
Models therefore project exactly to the subset-minimal solutions
containing the distinguished hypothesis (dropping one hypothesis from a
solution keeps the theory consistent, so failing entailment is the only
way S minus h can stop being a solution, and single drops suffice).

The witness reading of "does not entail the manifestations" is a clause
requiring some manifestation false; strict_paper instead requires all
manifestations false, which can miss minimal solutions whose witnesses
falsify only part of M.
"""

from __future__ import annotations

from typing import Dict, Optional

from .backdoor import BackdoorSet, require_backdoor
from .encoding import BLOCK_CAP, Encoding, EncodingBuilder
from .errors import CapExceeded, InstanceError
from .formula import Variable
from .horn import build_horn_parts
from .instance import AbductionInstance
from .krom import build_krom_parts
from . import proptree as pt


def _non_entailment_block(
    builder: EncodingBuilder, dropped: Variable, strict_paper: bool
) -> pt.PropFormula:
    inst = builder.inst
    copies: Dict[Variable, Variable] = {
        v: builder.copy_var(dropped.name, v) for v in inst.variables
    }
    parts = [pt.negate(pt.atom(copies[dropped]))]
    for other in inst.hypotheses:
        if other is dropped:
            continue
        parts.append(
            pt.implies(builder.picker(other), pt.atom(copies[other]))
        )
    for clause in inst.theory.clauses:
        parts.append(builder.clause_tree(clause, copies))
    negated = [pt.negate(pt.atom(copies[m])) for m in inst.manifestations]
    if strict_paper:
        parts.extend(negated)
    else:
        parts.append(pt.disj(negated))
    return pt.conj(parts)


def encode_subsetmin(
    inst: AbductionInstance,
    backdoor: BackdoorSet,
    h_star: str,
    strict_paper: bool = False,
    at_most: Optional[int] = None,
) -> Encoding:
    """Encoding satisfiable iff some subset-minimal solution contains

    h_star; selector projections of models are exactly those solutions."""
    if len(backdoor) > BLOCK_CAP:
        raise CapExceeded(f"encoding limited to {BLOCK_CAP} backdoor variables")
    require_backdoor(inst.theory, backdoor)
    hyps = {h.name: h for h in inst.hypotheses}
    if h_star not in hyps:
        raise InstanceError(f"{h_star!r} is not a hypothesis")
    builder = EncodingBuilder(inst)
    builder.add_selectors()
    builder.add_theory()
    if backdoor.base_class == "horn":
        build_horn_parts(builder, backdoor)
    else:
        build_krom_parts(builder, backdoor, strict_paper=strict_paper)
    builder.parts.append(pt.atom(builder.selector[hyps[h_star]]))
    for h in inst.hypotheses:
        block = _non_entailment_block(builder, h, strict_paper)
        builder.parts.append(pt.implies(builder.picker(h), block))
    return builder.finalize(
        backdoor.base_class, "subset-minimal", backdoor.names, at_most=at_most
    )
