"""Propositional formula trees and the Tseitin CNF transformation.

Constructors fold constants eagerly, so TRUE/FALSE never survive below
an internal node and degenerate encoder inputs (empty conjunctions,
guards over constants) collapse at build time.  Nested conjunctions and
disjunctions of the same kind are flattened.

Tseitin introduces one auxiliary variable per internal and/or/implies/iff
node with the full biconditional clause set, never polarity-optimized:
auxiliary values are then functions of the atom values, which keeps the
model projection onto the original variables bijective.  Negation needs
no auxiliary; it flips the literal of its child.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple

from .formula import Assignment, Clause, Literal, Variable, VariablePool, neg, pos


class PropFormula:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Const(PropFormula):
    value: bool


@dataclass(frozen=True, slots=True)
class Atom(PropFormula):
    var: Variable


@dataclass(frozen=True, slots=True)
class Not(PropFormula):
    child: PropFormula


@dataclass(frozen=True, slots=True)
class And(PropFormula):
    children: Tuple[PropFormula, ...]


@dataclass(frozen=True, slots=True)
class Or(PropFormula):
    children: Tuple[PropFormula, ...]


@dataclass(frozen=True, slots=True)
class Implies(PropFormula):
    lhs: PropFormula
    rhs: PropFormula


@dataclass(frozen=True, slots=True)
class Iff(PropFormula):
    lhs: PropFormula
    rhs: PropFormula


TRUE = Const(True)
FALSE = Const(False)


def atom(var: Variable) -> PropFormula:
    return Atom(var)


def negate(f: PropFormula) -> PropFormula:
    if isinstance(f, Const):
        return FALSE if f.value else TRUE
    if isinstance(f, Not):
        return f.child
    return Not(f)


def conj(parts: Iterable[PropFormula]) -> PropFormula:
    flat: List[PropFormula] = []
    for part in parts:
        if isinstance(part, Const):
            if not part.value:
                return FALSE
            continue
        if isinstance(part, And):
            flat.extend(part.children)
        else:
            flat.append(part)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def disj(parts: Iterable[PropFormula]) -> PropFormula:
    flat: List[PropFormula] = []
    for part in parts:
        if isinstance(part, Const):
            if part.value:
                return TRUE
            continue
        if isinstance(part, Or):
            flat.extend(part.children)
        else:
            flat.append(part)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def implies(lhs: PropFormula, rhs: PropFormula) -> PropFormula:
    if isinstance(lhs, Const):
        return rhs if lhs.value else TRUE
    if isinstance(rhs, Const):
        return TRUE if rhs.value else negate(lhs)
    return Implies(lhs, rhs)


def iff(lhs: PropFormula, rhs: PropFormula) -> PropFormula:
    if isinstance(lhs, Const):
        return rhs if lhs.value else negate(rhs)
    if isinstance(rhs, Const):
        return lhs if rhs.value else negate(lhs)
    if lhs is rhs:
        return TRUE
    return Iff(lhs, rhs)


def tree_variables(f: PropFormula) -> FrozenSet[Variable]:
    out: Set[Variable] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.var)
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, (And, Or)):
            stack.extend(node.children)
        elif isinstance(node, (Implies, Iff)):
            stack.append(node.lhs)
            stack.append(node.rhs)
    return frozenset(out)


def evaluate_tree(f: PropFormula, assignment: Assignment) -> bool:
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Atom):
        return assignment[f.var]
    if isinstance(f, Not):
        return not evaluate_tree(f.child, assignment)
    if isinstance(f, And):
        return all(evaluate_tree(c, assignment) for c in f.children)
    if isinstance(f, Or):
        return any(evaluate_tree(c, assignment) for c in f.children)
    if isinstance(f, Implies):
        return (not evaluate_tree(f.lhs, assignment)) or evaluate_tree(f.rhs, assignment)
    if isinstance(f, Iff):
        return evaluate_tree(f.lhs, assignment) == evaluate_tree(f.rhs, assignment)
    raise TypeError(f"not a PropFormula node: {f!r}")


def tseitin(f: PropFormula, pool: VariablePool, aux_prefix: str = "@t") -> List[Clause]:
    """Equisatisfiable CNF clauses for f; auxiliaries drawn from pool.

    The returned clause list asserts f via a unit clause on the literal
    of its root.  A constant root yields [] (true) or [empty] (false).
    """
    if isinstance(f, Const):
        return [] if f.value else [Clause()]

    clauses: List[Clause] = []
    cache: Dict[int, Literal] = {}

    def lit_of(node: PropFormula) -> Literal:
        if isinstance(node, Atom):
            return pos(node.var)
        if isinstance(node, Not):
            return lit_of(node.child).negate()
        cached = cache.get(id(node))
        if cached is not None:
            return cached
        out = pos(pool.fresh_numbered(aux_prefix))
        cache[id(node)] = out
        if isinstance(node, And):
            kids = [lit_of(c) for c in node.children]
            for kid in kids:
                clauses.append(Clause([out.negate(), kid]))
            clauses.append(Clause([out] + [k.negate() for k in kids]))
        elif isinstance(node, Or):
            kids = [lit_of(c) for c in node.children]
            clauses.append(Clause([out.negate()] + kids))
            for kid in kids:
                clauses.append(Clause([out, kid.negate()]))
        elif isinstance(node, Implies):
            p, q = lit_of(node.lhs), lit_of(node.rhs)
            clauses.append(Clause([out.negate(), p.negate(), q]))
            clauses.append(Clause([out, p]))
            clauses.append(Clause([out, q.negate()]))
        elif isinstance(node, Iff):
            p, q = lit_of(node.lhs), lit_of(node.rhs)
            clauses.append(Clause([out.negate(), p.negate(), q]))
            clauses.append(Clause([out.negate(), p, q.negate()]))
            clauses.append(Clause([out, p, q]))
            clauses.append(Clause([out, p.negate(), q.negate()]))
        else:
            raise TypeError(f"not a PropFormula node: {node!r}")
        return out

    root = lit_of(f)
    clauses.append(Clause([root]))
    return clauses
