"""Core CNF machinery: variables, literals, clauses, reducts, resolution.

Clauses are duplicate-free sets of literals kept in a canonical order
(ascending variable index, negative literal before positive), so tuple
equality coincides with set equality.  A clause may be tautological;
tautological clauses are satisfied by definition and therefore exempt
from the Horn/Krom class checks (they can never be reduced to a class
violation, only deleted or kept whole).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

from .errors import CapExceeded

Assignment = Mapping["Variable", bool]


@dataclass(frozen=True, slots=True)
class Variable:
    """A propositional variable with a dense nonnegative index."""

    name: str
    index: int

    def __repr__(self) -> str:
        return f"Variable({self.name!r}, {self.index})"


@dataclass(frozen=True, slots=True)
class Literal:
    var: Variable
    positive: bool

    def negate(self) -> "Literal":
        return Literal(self.var, not self.positive)

    @property
    def key(self) -> Tuple[int, bool]:
        return (self.var.index, self.positive)

    def __repr__(self) -> str:
        sign = "" if self.positive else "-"
        return f"{sign}{self.var.name}"


def pos(var: Variable) -> Literal:
    return Literal(var, True)


def neg(var: Variable) -> Literal:
    return Literal(var, False)


class Clause:
    """An immutable clause; the empty clause is unsatisfiable."""

    __slots__ = ("literals", "_hash")

    def __init__(self, literals: Iterable[Literal] = ()):
        ordered = sorted(set(literals), key=lambda lit: lit.key)
        object.__setattr__(self, "literals", tuple(ordered))
        object.__setattr__(self, "_hash", hash(self.literals))

    def __setattr__(self, name, value):
        raise AttributeError("Clause is immutable")

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def __eq__(self, other) -> bool:
        return isinstance(other, Clause) and self.literals == other.literals

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self.literals:
            return "Clause(<empty>)"
        return "Clause(%s)" % " ".join(repr(lit) for lit in self.literals)

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @property
    def is_tautological(self) -> bool:
        # canonical order puts -v immediately before v
        lits = self.literals
        return any(
            lits[i].var == lits[i + 1].var for i in range(len(lits) - 1)
        )

    def variables(self) -> FrozenSet[Variable]:
        return frozenset(lit.var for lit in self.literals)

    def positive_vars(self) -> Tuple[Variable, ...]:
        return tuple(lit.var for lit in self.literals if lit.positive)

    def subsumes(self, other: "Clause") -> bool:
        return set(self.literals) <= set(other.literals)


EMPTY_CLAUSE = Clause()


class CnfFormula:
    """A sequence of clauses over a fixed variable universe.

    The universe is index-ordered and dense (variables[i].index == i);
    it may contain variables that occur in no clause.
    """

    __slots__ = ("clauses", "variables", "_by_name")

    def __init__(self, clauses: Iterable[Clause], variables: Iterable[Variable]):
        clauses = tuple(clauses)
        variables = tuple(variables)
        for i, var in enumerate(variables):
            if var.index != i:
                raise ValueError(f"universe not densely indexed at {var!r}")
        names = {}
        for var in variables:
            if var.name in names:
                raise ValueError(f"duplicate variable name {var.name!r}")
            names[var.name] = var
        universe = set(variables)
        for clause in clauses:
            for lit in clause:
                if lit.var not in universe:
                    raise ValueError(f"literal {lit!r} outside the universe")
        object.__setattr__(self, "clauses", clauses)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "_by_name", names)

    def __setattr__(self, name, value):
        raise AttributeError("CnfFormula is immutable")

    def __len__(self) -> int:
        return len(self.clauses)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CnfFormula)
            and self.clauses == other.clauses
            and self.variables == other.variables
        )

    def __hash__(self) -> int:
        return hash((self.clauses, self.variables))

    def __repr__(self) -> str:
        return f"CnfFormula({len(self.clauses)} clauses, {len(self.variables)} vars)"

    def var_by_name(self, name: str) -> Variable:
        return self._by_name[name]

    def occurring_variables(self) -> FrozenSet[Variable]:
        out: Set[Variable] = set()
        for clause in self.clauses:
            out.update(lit.var for lit in clause)
        return frozenset(out)

    def with_clauses(self, extra: Iterable[Clause]) -> "CnfFormula":
        return CnfFormula(self.clauses + tuple(extra), self.variables)


class VariablePool:
    """Allocates variables with dense indices; the allocation order is

    the universe order of any formula built from the pool."""

    def __init__(self):
        self._vars: List[Variable] = []
        self._names: Set[str] = set()

    def fresh(self, name: str) -> Variable:
        if name in self._names:
            raise ValueError(f"variable name {name!r} already allocated")
        var = Variable(name, len(self._vars))
        self._vars.append(var)
        self._names.add(name)
        return var

    def fresh_numbered(self, prefix: str) -> Variable:
        """First free name among prefix0, prefix1, ... (collision-proof aux names)."""
        n = len(self._vars)
        while f"{prefix}{n}" in self._names:
            n += 1
        return self.fresh(f"{prefix}{n}")

    @property
    def variables(self) -> Tuple[Variable, ...]:
        return tuple(self._vars)

    def __len__(self) -> int:
        return len(self._vars)


def reduct(formula: CnfFormula, assignment: Assignment) -> CnfFormula:
    """Apply a partial truth assignment: drop satisfied clauses, strip

    falsified literals.  A clause whose literals are all falsified
    becomes the empty clause and stays in the result.
    """
    out = []
    for clause in formula.clauses:
        kept = []
        satisfied = False
        for lit in clause:
            if lit.var in assignment:
                if assignment[lit.var] == lit.positive:
                    satisfied = True
                    break
            else:
                kept.append(lit)
        if satisfied:
            continue
        out.append(clause if len(kept) == len(clause) else Clause(kept))
    return CnfFormula(out, formula.variables)


def is_horn(formula: CnfFormula) -> bool:
    """True iff every non-tautological clause has at most one positive literal."""
    return all(
        clause.is_tautological or len(clause.positive_vars()) <= 1
        for clause in formula.clauses
    )


def is_krom(formula: CnfFormula) -> bool:
    """True iff every non-tautological clause has at most two literals."""
    return all(
        clause.is_tautological or len(clause) <= 2 for clause in formula.clauses
    )


def evaluate(formula: CnfFormula, assignment: Assignment) -> bool:
    """Evaluate under an assignment that is total on the occurring variables.

    Tautological clauses count as satisfied regardless of the assignment.
    """
    for var in formula.occurring_variables():
        if var not in assignment:
            raise ValueError(f"assignment misses occurring variable {var.name!r}")
    for clause in formula.clauses:
        if clause.is_tautological:
            continue
        if not any(assignment[lit.var] == lit.positive for lit in clause):
            return False
    return True


def resolve(c1: Clause, c2: Clause, var: Variable) -> Clause:
    """Resolvent of c1 (containing var) and c2 (containing -var)."""
    merged = [lit for lit in c1 if lit.var != var]
    merged.extend(lit for lit in c2 if lit.var != var)
    return Clause(merged)


def resolution_closure(
    clauses: Iterable[Clause], max_clauses: int = 200_000
) -> FrozenSet[Clause]:
    """Saturate a clause set under binary resolution.

    Tautological clauses are dropped (input and derived) and duplicates
    are removed by clause equality; no subsumption beyond that.  Raises
    CapExceeded when the closure grows past max_clauses, which cannot
    happen for Krom inputs of sane size.
    """
    closure: Set[Clause] = set()
    # index: literal -> clauses currently containing it
    occurs: Dict[Literal, Set[Clause]] = {}
    queue: List[Clause] = []

    def push(clause: Clause) -> None:
        if clause.is_tautological or clause in closure:
            return
        if len(closure) >= max_clauses:
            raise CapExceeded(
                f"resolution closure exceeded {max_clauses} clauses"
            )
        closure.add(clause)
        for lit in clause:
            occurs.setdefault(lit, set()).add(clause)
        queue.append(clause)

    for clause in clauses:
        push(clause)

    while queue:
        clause = queue.pop()
        for lit in tuple(clause):
            partners = occurs.get(lit.negate())
            if not partners:
                continue
            for other in tuple(partners):
                resolvent = resolve(
                    clause if lit.positive else other,
                    other if lit.positive else clause,
                    lit.var,
                )
                push(resolvent)
    return frozenset(closure)
