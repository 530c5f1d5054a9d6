"""Strong backdoor sets: verification and bounded-depth detection.

B is a strong backdoor of T for a base class when every assignment to B
leaves a reduct inside the class.  Verification checks the definition
over all 2^|B| assignments.  Detection does not: deleting B's variables
from a clause is what the reducts do in the worst case, so Horn reduces
to vertex cover over co-occurring positive pairs and Krom to hitting
all clauses with more than two variables, both solved by small search
trees that branch on the lexicographically smallest violated edge or
triple (smaller variable index first).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from .errors import BackdoorError, CapExceeded
from .formula import CnfFormula, Variable, is_horn, is_krom, reduct

log = logging.getLogger(__name__)

VERIFY_CAP = 24

BASE_CLASSES = ("horn", "krom")


def _check_class(base_class: str) -> None:
    if base_class not in BASE_CLASSES:
        raise ValueError(f"unknown base class {base_class!r}")


@dataclass(frozen=True)
class BackdoorSet:
    """A candidate backdoor: variables (index-sorted) plus the base class."""

    variables: Tuple[Variable, ...]
    base_class: str

    @staticmethod
    def for_theory(
        theory: CnfFormula, variables: Iterable[Variable], base_class: str
    ) -> "BackdoorSet":
        """Normalize a user-supplied set: sort, prune non-occurring variables."""
        _check_class(base_class)
        occurring = theory.occurring_variables()
        kept = []
        for var in sorted(set(variables), key=lambda v: v.index):
            if var in occurring:
                kept.append(var)
            else:
                log.warning(
                    "pruning backdoor variable %r: does not occur in the theory",
                    var.name,
                )
        return BackdoorSet(tuple(kept), base_class)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def __len__(self) -> int:
        return len(self.variables)


def backdoor_assignments(
    variables: Tuple[Variable, ...]
) -> Iterator[Tuple[int, Dict[Variable, bool]]]:
    """All assignments over the variables, in binary-counting order.

    Bit j of the counter gives the value of the j-th variable (the set
    must already be index-sorted); this fixed order makes every encoder
    and checker walk the blocks identically.
    """
    for i in range(1 << len(variables)):
        yield i, {v: bool(i >> j & 1) for j, v in enumerate(variables)}


def verify_strong_backdoor(
    theory: CnfFormula,
    variables: Iterable[Variable],
    base_class: str,
    cap: int = VERIFY_CAP,
) -> bool:
    """Definitional check: every reduct over B lands in the base class."""
    _check_class(base_class)
    ordered = tuple(sorted(set(variables), key=lambda v: v.index))
    if len(ordered) > cap:
        raise CapExceeded(f"verification limited to {cap} backdoor variables")
    in_class = is_horn if base_class == "horn" else is_krom
    return all(
        in_class(reduct(theory, tau)) for _, tau in backdoor_assignments(ordered)
    )


def require_backdoor(theory: CnfFormula, backdoor: BackdoorSet) -> None:
    if not verify_strong_backdoor(theory, backdoor.variables, backdoor.base_class):
        raise BackdoorError(
            f"{{{', '.join(backdoor.names)}}} is not a strong "
            f"{backdoor.base_class} backdoor of the theory"
        )


def _horn_edges(theory: CnfFormula) -> List[Tuple[int, int]]:
    edges: Set[Tuple[int, int]] = set()
    for clause in theory.clauses:
        if clause.is_tautological:
            continue  # never reducible to a class violation
        positives = sorted(v.index for v in clause.positive_vars())
        for a in range(len(positives)):
            for b in range(a + 1, len(positives)):
                edges.add((positives[a], positives[b]))
    return sorted(edges)


def detect_horn_backdoor(
    theory: CnfFormula, max_size: int
) -> Optional[BackdoorSet]:
    """Strong Horn backdoor of size <= max_size, or None if there is none.

    Two positive variables in one clause cannot both stay outside B, so
    candidates are vertex covers of the positive co-occurrence graph;
    the 2-way branching is exhaustive up to the size bound.
    """
    edges = _horn_edges(theory)
    by_index = {v.index: v for v in theory.variables}

    def search(chosen: Set[int], depth: int) -> Optional[Set[int]]:
        violated = next(
            ((a, b) for a, b in edges if a not in chosen and b not in chosen), None
        )
        if violated is None:
            return chosen
        if depth == 0:
            return None
        for pick in violated:
            found = search(chosen | {pick}, depth - 1)
            if found is not None:
                return found
        return None

    result = search(set(), max_size)
    if result is None:
        return None
    ordered = tuple(by_index[i] for i in sorted(result))
    return BackdoorSet(ordered, "horn")


def detect_krom_backdoor(
    theory: CnfFormula, max_size: int
) -> Optional[BackdoorSet]:
    """Strong Krom backdoor of size <= max_size, or None if there is none.

    A clause with w > 2 distinct variables keeps more than two literals
    under some assignment unless B contains at least w-2 of them, so B
    must meet every 3 of its variables; 3-way branching on the smallest
    violated triple is exhaustive up to the size bound.
    """
    clause_vars = [
        sorted(v.index for v in clause.variables())
        for clause in theory.clauses
        if not clause.is_tautological
    ]
    by_index = {v.index: v for v in theory.variables}

    def smallest_triple(chosen: Set[int]) -> Optional[Tuple[int, int, int]]:
        best: Optional[Tuple[int, int, int]] = None
        for indices in clause_vars:
            free = [i for i in indices if i not in chosen]
            if len(free) > 2:
                triple = tuple(free[:3])
                if best is None or triple < best:
                    best = triple
        return best

    def search(chosen: Set[int], depth: int) -> Optional[Set[int]]:
        triple = smallest_triple(chosen)
        if triple is None:
            return chosen
        if depth == 0:
            return None
        for pick in triple:
            found = search(chosen | {pick}, depth - 1)
            if found is not None:
                return found
        return None

    result = search(set(), max_size)
    if result is None:
        return None
    ordered = tuple(by_index[i] for i in sorted(result))
    return BackdoorSet(ordered, "krom")


def smallest_backdoor(
    theory: CnfFormula, base_class: str, max_size: Optional[int] = None
) -> Optional[BackdoorSet]:
    """Smallest backdoor found by raising the budget one step at a time."""
    _check_class(base_class)
    detect = detect_horn_backdoor if base_class == "horn" else detect_krom_backdoor
    ceiling = len(theory.occurring_variables()) if max_size is None else max_size
    for k in range(ceiling + 1):
        found = detect(theory, k)
        if found is not None:
            return found
    return None
