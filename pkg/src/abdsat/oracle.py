"""Exhaustive ground-truth oracle for abduction instances.

Everything here enumerates all 2^|V| assignments directly, without the
SAT solver, the resolution machinery, or any backdoor reasoning, so it
can serve as an independent reference for the engines.  Inputs are
capped; the oracle is a test instrument, not a solver.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Sequence, Set, Tuple

from .errors import CapExceeded
from .instance import AbductionInstance, Solution

VAR_CAP = 20
HYP_CAP = 12


def _scan(inst: AbductionInstance) -> List[Tuple[int, bool]]:
    """For every model of the theory: (hypothesis bitmask, all mans true)."""
    variables = inst.variables
    if len(variables) > VAR_CAP:
        raise CapExceeded(f"oracle limited to {VAR_CAP} variables")
    hyp_bit = {v: 1 << i for i, v in enumerate(inst.hypotheses)}
    clauses = [tuple((lit.var.index, lit.positive) for lit in cl) for cl in inst.theory.clauses]
    mans_idx = [v.index for v in inst.manifestations]
    rows = []
    for bits in product((False, True), repeat=len(variables)):
        if any(all(bits[i] != p for i, p in cl) for cl in clauses):
            continue
        mask = 0
        for v, bit in hyp_bit.items():
            if bits[v.index]:
                mask |= bit
        rows.append((mask, all(bits[i] for i in mans_idx)))
    return rows


def _is_solution(rows: Sequence[Tuple[int, bool]], s_mask: int) -> bool:
    consistent = False
    for mask, mans_ok in rows:
        if mask & s_mask == s_mask:
            consistent = True
            if not mans_ok:
                return False
    return consistent


def _mask_of(inst: AbductionInstance, names: Iterable[str]) -> int:
    position = {v.name: i for i, v in enumerate(inst.hypotheses)}
    mask = 0
    for name in names:
        if name not in position:
            raise ValueError(f"{name!r} is not a hypothesis")
        mask |= 1 << position[name]
    return mask


def oracle_is_solution(inst: AbductionInstance, names: Iterable[str]) -> bool:
    """S explains M: theory+S is consistent and every model of it sets M true."""
    return _is_solution(_scan(inst), _mask_of(inst, names))


def oracle_solve(inst: AbductionInstance) -> FrozenSet[Solution]:
    """All solutions, by scanning every subset of the hypotheses."""
    if len(inst.hypotheses) > HYP_CAP:
        raise CapExceeded(f"oracle limited to {HYP_CAP} hypotheses")
    rows = _scan(inst)
    out: Set[Solution] = set()
    hyps = inst.hyp_names
    for s_mask in range(1 << len(hyps)):
        if _is_solution(rows, s_mask):
            out.add(frozenset(h for i, h in enumerate(hyps) if s_mask >> i & 1))
    return frozenset(out)


def oracle_subset_minimal(inst: AbductionInstance) -> FrozenSet[Solution]:
    solutions = oracle_solve(inst)
    return frozenset(
        s for s in solutions if not any(t < s for t in solutions)
    )
