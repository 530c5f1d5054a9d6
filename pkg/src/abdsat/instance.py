"""Abduction instances: types, text/JSON parsing, seeded random generation.

The text format is line oriented; `#` starts a comment anywhere:

    var  snows rains precipitation warm hurt sad
    hyp  precipitation warm hurt
    man  sad
    clause -precipitation rains snows
    clause -hurt sad

Exactly one `var` line declares the universe (indices follow its order).
`hyp` and `man` lines may repeat and accumulate.  A `clause` line lists
literals (`name` or `-name`); an empty list is the empty clause.  The
same data in JSON uses keys vars/hyps/mans/clauses, clauses being lists
of signed name strings.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import InstanceError
from .formula import Clause, CnfFormula, Literal, Variable, neg, pos
from . import formula as fm

Solution = FrozenSet[str]


@dataclass(frozen=True)
class AbductionInstance:
    variables: Tuple[Variable, ...]
    hypotheses: Tuple[Variable, ...]
    manifestations: Tuple[Variable, ...]
    theory: CnfFormula

    def __post_init__(self):
        declared = set(self.variables)
        for var in self.hypotheses:
            if var not in declared:
                raise InstanceError(f"hypothesis {var.name!r} not declared")
        for var in self.manifestations:
            if var not in declared:
                raise InstanceError(f"manifestation {var.name!r} not declared")
        overlap = {v.name for v in self.hypotheses} & {
            v.name for v in self.manifestations
        }
        if overlap:
            raise InstanceError(
                f"hypotheses and manifestations overlap: {sorted(overlap)}"
            )
        if self.theory.variables != self.variables:
            raise InstanceError("theory universe differs from the declared variables")

    def var_by_name(self, name: str) -> Variable:
        return self.theory.var_by_name(name)

    @property
    def hyp_names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.hypotheses)

    @property
    def man_names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.manifestations)

    def solution_vars(self, names: Iterable[str]) -> FrozenSet[Variable]:
        hyps = {v.name: v for v in self.hypotheses}
        out = set()
        for name in names:
            if name not in hyps:
                raise InstanceError(f"{name!r} is not a hypothesis")
            out.add(hyps[name])
        return frozenset(out)


def build_instance(
    var_names: Sequence[str],
    hyp_names: Sequence[str],
    man_names: Sequence[str],
    clauses: Sequence[Sequence[Tuple[bool, str]]],
) -> AbductionInstance:
    """Assemble an instance from names; clause literals are (positive, name)."""
    if len(set(var_names)) != len(var_names):
        raise InstanceError("duplicate variable declaration")
    variables = tuple(Variable(n, i) for i, n in enumerate(var_names))
    by_name = {v.name: v for v in variables}

    def resolve(name: str, what: str) -> Variable:
        if name not in by_name:
            raise InstanceError(f"{what} uses undeclared variable {name!r}")
        return by_name[name]

    def uniq(names: Sequence[str], what: str) -> Tuple[Variable, ...]:
        seen: List[Variable] = []
        for n in names:
            v = resolve(n, what)
            if v not in seen:
                seen.append(v)
        return tuple(seen)

    built = []
    for lits in clauses:
        built.append(
            Clause(
                Literal(resolve(n, "clause"), positive) for positive, n in lits
            )
        )
    theory = CnfFormula(built, variables)
    return AbductionInstance(
        variables, uniq(hyp_names, "hyp"), uniq(man_names, "man"), theory
    )


def parse_instance(text: str) -> AbductionInstance:
    var_names: Optional[List[str]] = None
    hyp_names: List[str] = []
    man_names: List[str] = []
    clauses: List[List[Tuple[bool, str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        if kind == "var":
            if var_names is not None:
                raise InstanceError("second var line", line=lineno)
            if not args:
                raise InstanceError("empty var line", line=lineno)
            var_names = args
        elif kind == "hyp":
            hyp_names.extend(args)
        elif kind == "man":
            man_names.extend(args)
        elif kind == "clause":
            lits = []
            for tok in args:
                if tok == "-":
                    raise InstanceError("bare '-' literal", line=lineno)
                if tok.startswith("-"):
                    lits.append((False, tok[1:]))
                else:
                    lits.append((True, tok))
            clauses.append(lits)
        else:
            raise InstanceError(f"unknown directive {kind!r}", line=lineno)
    if var_names is None:
        raise InstanceError("missing var line")
    return build_instance(var_names, hyp_names, man_names, clauses)


def parse_instance_json(text: str) -> AbductionInstance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"invalid JSON: {exc}") from exc
    for key in ("vars", "hyps", "mans", "clauses"):
        if key not in data:
            raise InstanceError(f"missing key {key!r}")
    clauses = []
    for entry in data["clauses"]:
        lits = []
        for tok in entry:
            if not isinstance(tok, str) or tok in ("", "-"):
                raise InstanceError(f"bad literal {tok!r}")
            if tok.startswith("-"):
                lits.append((False, tok[1:]))
            else:
                lits.append((True, tok))
        clauses.append(lits)
    return build_instance(data["vars"], data["hyps"], data["mans"], clauses)


def load_instance(path: str) -> AbductionInstance:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    if str(path).endswith(".json"):
        return parse_instance_json(text)
    return parse_instance(text)


@dataclass(frozen=True)
class GenLimits:
    """Upper bounds for the random generator."""

    vars: int = 7
    hyps: int = 3
    mans: int = 2
    clauses: int = 10
    width: int = 4  # literals per clause, counting the backdoor part


def random_instance(
    seed: int,
    limits: GenLimits = GenLimits(),
    base_class: str = "horn",
    backdoor_size: int = 2,
) -> Tuple[AbductionInstance, FrozenSet[str]]:
    """Deterministic random instance with a planted strong backdoor.

    Clauses are built as arbitrary literals over the planted set B plus
    an in-class core over the remaining variables, so every assignment
    to B leaves a Horn (resp. Krom) reduct.  Returns the instance and
    the planted backdoor names; the instance theory itself is usually
    outside the base class.
    """
    if base_class not in ("horn", "krom"):
        raise ValueError(f"unknown base class {base_class!r}")
    if limits.vars < 3 or limits.clauses < 1:
        raise ValueError("limits too small")
    rng = random.Random(seed)
    nv = rng.randint(3, limits.vars)
    names = [f"x{i}" for i in range(nv)]
    n_man = rng.randint(1, max(1, min(limits.mans, nv - 2)))
    mans = rng.sample(names, n_man)
    non_man = [n for n in names if n not in mans]
    n_hyp = rng.randint(1, max(1, min(limits.hyps, len(non_man))))
    hyps = rng.sample(non_man, n_hyp)
    k = rng.randint(0, min(backdoor_size, len(non_man)))
    backdoor = sorted(rng.sample(non_man, k))
    core_pool = [n for n in names if n not in backdoor]

    clauses: List[List[Tuple[bool, str]]] = []
    n_clauses = rng.randint(1, limits.clauses)
    for _ in range(n_clauses):
        if rng.random() < 0.35:
            # support clause -h | m, Horn and Krom whatever B is
            clauses.append(
                [(False, rng.choice(hyps)), (True, rng.choice(mans))]
            )
            continue
        lits: List[Tuple[bool, str]] = []
        for b in backdoor:
            if rng.random() < 0.4:
                lits.append((rng.random() < 0.5, b))
        budget = max(0, limits.width - len(lits))
        if base_class == "krom":
            core_width = rng.randint(0, min(2, budget, len(core_pool)))
        else:
            core_width = rng.randint(0, min(budget, len(core_pool)))
        lo = 1 if not lits else 0
        core_width = max(core_width, min(lo, len(core_pool)))
        core_vars = rng.sample(core_pool, core_width)
        if base_class == "krom":
            core = [(rng.random() < 0.5, n) for n in core_vars]
        else:
            core = [(False, n) for n in core_vars]
            if core and rng.random() < 0.6:
                flip = rng.randrange(len(core))
                core[flip] = (True, core[flip][1])
        lits.extend(core)
        if lits:
            clauses.append(lits)
    inst = build_instance(names, hyps, mans, clauses)
    return inst, frozenset(backdoor)
