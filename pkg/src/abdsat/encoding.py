"""Encodings couple a CNF with the roles of its variables.

Every CNF variable carries one role: a theory variable copied from the
instance, a hypothesis selector, a least-model step variable, a fresh
per-hypothesis theory copy, or a Tseitin auxiliary.  Solutions are read
back from a model through the solution variables (selectors when
present, theory hypotheses otherwise), so decoding never depends on
auxiliary values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .formula import (
    Assignment,
    Clause,
    CnfFormula,
    Literal,
    Variable,
    VariablePool,
    evaluate,
)
from . import proptree as pt

# encoders emit one block per backdoor assignment; 2^12 is already huge
BLOCK_CAP = 12


@dataclass(frozen=True, slots=True)
class Role:
    kind: str  # "theory" | "selector" | "step" | "aux"
    name: Optional[str] = None  # instance variable name, if any
    block: Optional[int] = None  # truth assignment index for step variables
    step: Optional[int] = None
    copy: Optional[str] = None  # hypothesis tag for non-entailment copies


@dataclass(frozen=True)
class Encoding:
    cnf: CnfFormula
    roles: Dict[Variable, Role]
    solution_vars: Dict[str, Variable]  # hypothesis name -> deciding variable
    base_class: str
    mode: str  # "direct" | "decoupled" | "subset-minimal"
    backdoor: Tuple[str, ...]

    @property
    def num_variables(self) -> int:
        return len(self.cnf.variables)

    @property
    def num_clauses(self) -> int:
        return len(self.cnf.clauses)

    def stats(self) -> Dict[str, int]:
        return {"variables": self.num_variables, "clauses": self.num_clauses}


def decode_solution(enc: Encoding, model: Assignment) -> FrozenSet[str]:
    """Hypothesis names selected by a satisfying model of enc."""
    if not evaluate(enc.cnf, model):
        raise ValueError("model does not satisfy the encoding")
    return frozenset(
        name for name, var in enc.solution_vars.items() if model.get(var, False)
    )


class EncodingBuilder:
    """Collects formula parts and variable roles for one encoding.

    Theory variables are allocated first (instance declaration order),
    then selectors, then whatever the encoder asks for, then Tseitin
    auxiliaries; the built-in solver branches in that same order, so
    decisions fall on instance-level variables before plumbing.
    """

    def __init__(self, inst):
        self.inst = inst
        self.pool = VariablePool()
        self.roles: Dict[Variable, Role] = {}
        self.parts: List[pt.PropFormula] = []
        self.raw_clauses: List[Clause] = []
        self.theory_var: Dict[Variable, Variable] = {}
        self.selector: Dict[Variable, Variable] = {}
        for v in inst.variables:
            self.theory_var[v] = self._fresh(v.name, Role("theory", name=v.name))

    def _fresh(self, name: str, role: Role) -> Variable:
        try:
            var = self.pool.fresh(name)
        except ValueError:  # user-chosen name collided with a reserved one
            var = self.pool.fresh_numbered(name + "~")
        self.roles[var] = role
        return var

    def add_selectors(self) -> None:
        for h in self.inst.hypotheses:
            sel = self._fresh(f"@s:{h.name}", Role("selector", name=h.name))
            self.selector[h] = sel
            self.parts.append(
                pt.implies(pt.atom(sel), pt.atom(self.theory_var[h]))
            )

    def picker(self, hyp: Variable) -> pt.PropFormula:
        """The literal that says 'hyp is in S': selector if decoupled."""
        if self.selector:
            return pt.atom(self.selector[hyp])
        return pt.atom(self.theory_var[hyp])

    def step_var(self, block: int, step: int, v: Variable) -> Variable:
        return self._fresh(
            f"@u{block}:{step}:{v.name}",
            Role("step", name=v.name, block=block, step=step),
        )

    def copy_var(self, tag: str, v: Variable) -> Variable:
        return self._fresh(
            f"@n:{tag}:{v.name}", Role("copy", name=v.name, copy=tag)
        )

    def clause_tree(
        self, clause: Clause, var_map: Optional[Dict[Variable, Variable]] = None
    ) -> pt.PropFormula:
        mapping = self.theory_var if var_map is None else var_map
        return pt.disj(
            pt.atom(mapping[lit.var])
            if lit.positive
            else pt.negate(pt.atom(mapping[lit.var]))
            for lit in clause
        )

    def add_theory(
        self, var_map: Optional[Dict[Variable, Variable]] = None
    ) -> None:
        """Copy the theory over var_map as CNF directly; a clause is

        already in clausal form, so routing it through Tseitin would
        only buy an auxiliary per clause."""
        mapping = self.theory_var if var_map is None else var_map
        for clause in self.inst.theory.clauses:
            self.raw_clauses.append(
                Clause(
                    Literal(mapping[lit.var], lit.positive) for lit in clause
                )
            )

    def finalize(
        self,
        base_class: str,
        mode: str,
        backdoor_names: Tuple[str, ...],
        at_most: Optional[int] = None,
    ) -> Encoding:
        formula = pt.conj(self.parts)
        clauses = self.raw_clauses + pt.tseitin(formula, self.pool)
        solution_vars = {}
        for h in self.inst.hypotheses:
            solution_vars[h.name] = (
                self.selector[h] if self.selector else self.theory_var[h]
            )
        if at_most is not None:
            from .solver import at_most_k  # local import avoids a cycle

            counted = [solution_vars[h.name] for h in self.inst.hypotheses]
            clauses = clauses + at_most_k(counted, at_most, self.pool)
        for var in self.pool.variables:
            self.roles.setdefault(var, Role("aux"))
        cnf = CnfFormula(clauses, self.pool.variables)
        return Encoding(
            cnf=cnf,
            roles=self.roles,
            solution_vars=solution_vars,
            base_class=base_class,
            mode=mode,
            backdoor=backdoor_names,
        )


def roles_json(enc: Encoding) -> dict:
    """Sidecar description of the DIMACS numbering (1-based)."""
    variables = {}
    for var in enc.cnf.variables:
        role = enc.roles.get(var, Role("aux"))
        entry = {"role": role.kind, "name": role.name if role.name else var.name}
        if role.block is not None:
            entry["block"] = role.block
        if role.step is not None:
            entry["step"] = role.step
        if role.copy is not None:
            entry["copy"] = role.copy
        variables[str(var.index + 1)] = entry
    return {
        "class": enc.base_class,
        "mode": enc.mode,
        "backdoor": list(enc.backdoor),
        "solution_variables": {
            name: var.index + 1 for name, var in sorted(enc.solution_vars.items())
        },
        "variables": variables,
    }
