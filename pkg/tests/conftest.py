"""Shared fixtures and brute-force helpers the tests check against.

The helpers here deliberately avoid the library's own machinery: truth
tables over explicit assignments, nothing cleverer. They are the
independent reference the encoder and checker tests compare to.
"""

import itertools
import logging
from pathlib import Path

import pytest

from abdsat.backdoor import BackdoorSet
from abdsat.instance import GenLimits, load_instance, random_instance

DATA = Path(__file__).parent / "data"
EXAMPLE_PATH = DATA / "example.abd"

# the detector tests pass deliberately padded sets; keep the log quiet
logging.getLogger("abdsat.backdoor").setLevel(logging.ERROR)

CORPUS_LIMITS = GenLimits(vars=7, hyps=3, mans=2, clauses=10, width=4)


@pytest.fixture
def ex():
    return load_instance(str(EXAMPLE_PATH))


def assignments(variables):
    """Every total assignment over the given variables, as dicts."""
    variables = list(variables)
    for bits in itertools.product((False, True), repeat=len(variables)):
        yield dict(zip(variables, bits))


def clause_true(clause, assignment):
    return any(assignment[lit.var] is lit.positive for lit in clause)


def truth_table_models(clauses, variables):
    for a in assignments(variables):
        if all(clause_true(c, a) for c in clauses):
            yield a


def truth_table_entails(clauses, variables, target):
    """Does the clause set entail the target clause? Pure truth table."""
    return all(
        clause_true(target, a) for a in truth_table_models(clauses, variables)
    )


def seeded_corpus(base_class, count, seed0=0, backdoor_size=3, limits=None):
    """Seeded random instances paired with their planted backdoors.

    Planted variables that ended up unused by the theory are dropped
    before building the set, so the pairs come back warning-free.
    """
    limits = limits or CORPUS_LIMITS
    pairs = []
    for seed in range(seed0, seed0 + count):
        inst, planted = random_instance(
            seed, limits, base_class=base_class, backdoor_size=backdoor_size
        )
        occurring = {v.name for v in inst.theory.occurring_variables()}
        variables = [
            inst.var_by_name(n) for n in sorted(planted) if n in occurring
        ]
        bd = BackdoorSet.for_theory(inst.theory, variables, base_class)
        pairs.append((inst, bd))
    return pairs


def subsets_of(names):
    names = list(names)
    for r in range(len(names) + 1):
        yield from (frozenset(c) for c in itertools.combinations(names, r))
