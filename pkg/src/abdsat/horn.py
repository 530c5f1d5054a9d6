"""Horn-side machinery: least models, the exponential-blowup-free

solution checker over a strong Horn backdoor, and the SAT encoding that
unrolls least-model computation inside every backdoor block.

A hypothesis set S is a solution when (a) some assignment to the
backdoor leaves theory-reduct plus S consistent and (b) for every
assignment to the backdoor that sets S's backdoor part true, the reduct
plus S entails the surviving manifestations.  Both the checker and the
encoding walk the same binary-counting block order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .backdoor import BackdoorSet, backdoor_assignments, require_backdoor
from .encoding import BLOCK_CAP, Encoding, EncodingBuilder, Role
from .errors import BackdoorError, CapExceeded
from .formula import Clause, CnfFormula, Variable, is_horn, reduct
from .instance import AbductionInstance, Solution
from . import proptree as pt


@dataclass(frozen=True)
class HornDecomposition:
    """Rules (head, body) and purely negative constraint clauses.

    Tautological clauses are satisfied whatever happens and carry no
    rule or constraint; they are dropped here.
    """

    rules: Tuple[Tuple[Variable, Tuple[Variable, ...]], ...]
    constraints: Tuple[Clause, ...]


def split_horn(formula: CnfFormula) -> HornDecomposition:
    rules = []
    constraints = []
    for clause in formula.clauses:
        if clause.is_tautological:
            continue
        heads = clause.positive_vars()
        if len(heads) > 1:
            raise ValueError(f"not a Horn clause: {clause!r}")
        body = tuple(lit.var for lit in clause if not lit.positive)
        if heads:
            rules.append((heads[0], body))
        else:
            constraints.append(clause)
    return HornDecomposition(tuple(rules), tuple(constraints))


def least_model(
    formula: CnfFormula, seeds: Iterable[Variable]
) -> Optional[FrozenSet[Variable]]:
    """Least model of a Horn formula plus positive unit seeds.

    Starts from the seeds, fires rules whose bodies hold until the fixed
    point, then checks the purely negative constraints; returns None
    when some constraint is violated (formula plus seeds unsatisfiable).
    """
    deco = split_horn(formula)
    true: Set[Variable] = set(seeds)
    changed = True
    while changed:
        changed = False
        for head, body in deco.rules:
            if head not in true and all(b in true for b in body):
                true.add(head)
                changed = True
    for constraint in deco.constraints:
        if all(lit.var in true for lit in constraint):
            return None  # the empty clause lands here too
    return frozenset(true)


def _solution_set(
    inst: AbductionInstance, names: Iterable[str]
) -> FrozenSet[Variable]:
    return inst.solution_vars(names)


def check_solution_horn(
    inst: AbductionInstance, backdoor: BackdoorSet, names: Iterable[str]
) -> bool:
    """Decide whether the named hypotheses are a solution, without SAT.

    Walks all backdoor assignments compatible with S, tracking one
    consistency witness and entailment everywhere: in a block whose
    reduct plus S is consistent, the least model must contain every
    manifestation the block leaves open, and manifestations the block
    sets false must not have a consistent reduct.
    """
    if backdoor.base_class != "horn":
        raise ValueError("check_solution_horn needs a Horn backdoor")
    require_backdoor(inst.theory, backdoor)
    s_vars = _solution_set(inst, names)
    consistent = False
    for _, tau in backdoor_assignments(backdoor.variables):
        if any(not tau[h] for h in s_vars if h in tau):
            continue  # tau disagrees with S on the backdoor
        model = least_model(
            reduct(inst.theory, tau), (h for h in s_vars if h not in tau)
        )
        if model is None:
            continue  # inconsistent block entails anything
        consistent = True
        for m in inst.manifestations:
            if not (tau[m] if m in tau else m in model):
                return False
    return consistent


def solve_bruteforce_horn(
    inst: AbductionInstance, backdoor: BackdoorSet
) -> Optional[Solution]:
    """First solution in binary-counting subset order (bit j of the

    counter picks the j-th declared hypothesis), or None."""
    hyps = inst.hypotheses
    for mask in range(1 << len(hyps)):
        names = frozenset(h.name for j, h in enumerate(hyps) if mask >> j & 1)
        if check_solution_horn(inst, backdoor, names):
            return names
    return None


def build_horn_parts(
    builder: EncodingBuilder, backdoor: BackdoorSet
) -> None:
    """Append the entailment blocks for every backdoor assignment.

    Per block i: u-variables unroll least-model propagation of the
    reduct for p = min(#clauses, #variables) steps, seeded with the
    hypothesis pickers; the block asserts the unrolling and requires
    that if the constraints hold at step p (reduct plus S consistent),
    the open manifestations hold there too.  Backdoor variables get no
    u-chain: they cannot occur in the reduct, so their chain would
    pin its (irrelevant) initial value forever.  A reduct containing
    the empty clause makes the block vacuous and emits nothing.
    """
    inst = builder.inst
    theory = inst.theory
    steps = min(len(theory.clauses), len(inst.variables))
    in_backdoor = set(backdoor.variables)
    chain_vars = [v for v in inst.variables if v not in in_backdoor]
    hyp_set = set(inst.hypotheses)
    mans = inst.manifestations
    for i, tau in backdoor_assignments(backdoor.variables):
        red = reduct(theory, tau)
        if not is_horn(red):  # cannot happen after verification
            raise BackdoorError("reduct escaped the Horn class")
        if any(cl.is_empty for cl in red.clauses):
            continue  # block is vacuously entailed
        deco = split_horn(red)
        rules_by_head: Dict[Variable, List[Tuple[Variable, ...]]] = {}
        for head, body in deco.rules:
            rules_by_head.setdefault(head, []).append(body)

        guard = pt.conj(
            pt.implies(builder.picker(h), pt.Const(tau[h]))
            for h in inst.hypotheses
            if h in tau
        )
        block_parts: List[pt.PropFormula] = []
        level: Dict[Variable, pt.PropFormula] = {}
        for v in chain_vars:
            u0 = builder.step_var(i, 0, v)
            init = builder.picker(v) if v in hyp_set else pt.FALSE
            block_parts.append(pt.iff(pt.atom(u0), init))
            level[v] = pt.atom(u0)
        for j in range(1, steps + 1):
            next_level: Dict[Variable, pt.PropFormula] = {}
            for v in chain_vars:
                uj = builder.step_var(i, j, v)
                fired = [
                    pt.conj(level[b] for b in body)
                    for body in rules_by_head.get(v, ())
                ]
                block_parts.append(
                    pt.iff(pt.atom(uj), pt.disj([level[v]] + fired))
                )
                next_level[v] = pt.atom(uj)
            level = next_level
        check = pt.conj(
            pt.disj(pt.negate(level[lit.var]) for lit in constraint)
            for constraint in deco.constraints
        )
        manifest = pt.conj(
            pt.Const(tau[m]) if m in tau else level[m] for m in mans
        )
        entail = pt.conj(block_parts + [pt.implies(check, manifest)])
        builder.parts.append(pt.implies(guard, entail))


def encode_horn_solv(
    inst: AbductionInstance,
    backdoor: BackdoorSet,
    decoupled: bool = False,
    at_most: Optional[int] = None,
) -> Encoding:
    """SAT encoding whose models' solution projections are exactly the

    solutions of the instance (selector projection when decoupled)."""
    if backdoor.base_class != "horn":
        raise ValueError("encode_horn_solv needs a Horn backdoor")
    if len(backdoor) > BLOCK_CAP:
        raise CapExceeded(f"encoding limited to {BLOCK_CAP} backdoor variables")
    require_backdoor(inst.theory, backdoor)
    builder = EncodingBuilder(inst)
    if decoupled:
        builder.add_selectors()
    builder.add_theory()
    build_horn_parts(builder, backdoor)
    return builder.finalize(
        "horn",
        "decoupled" if decoupled else "direct",
        backdoor.names,
        at_most=at_most,
    )
