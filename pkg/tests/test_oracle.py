"""The exhaustive reference: scan all assignments, no shortcuts.

These tests pin the oracle itself against hand-computed values and a
second, even dumber enumeration, because every equivalence test in the
suite trusts it.
"""

import pytest

from abdsat.errors import CapExceeded
from abdsat.instance import build_instance
from abdsat.oracle import (
    HYP_CAP,
    VAR_CAP,
    oracle_is_solution,
    oracle_solve,
    oracle_subset_minimal,
)

from conftest import (
    assignments,
    clause_true,
    seeded_corpus,
    subsets_of,
)


def hand_solutions(inst):
    """Definition transcribed literally: consistency plus entailment."""
    out = set()
    variables = list(inst.variables)
    mans = set(inst.manifestations)
    for s in subsets_of(inst.hyp_names):
        s_vars = {v for v in inst.hypotheses if v.name in s}
        models = [
            a
            for a in assignments(variables)
            if all(clause_true(c, a) for c in inst.theory.clauses)
            and all(a[v] for v in s_vars)
        ]
        if models and all(all(a[m] for m in mans) for a in models):
            out.add(frozenset(s))
    return out


EXPECTED_EX = {
    frozenset({"hurt"}),
    frozenset({"hurt", "precipitation"}),
    frozenset({"hurt", "warm"}),
    frozenset({"hurt", "precipitation", "warm"}),
    frozenset({"precipitation", "warm"}),
}


class TestExample:
    def test_all_solutions(self, ex):
        assert oracle_solve(ex) == EXPECTED_EX

    def test_minimal_solutions(self, ex):
        assert oracle_subset_minimal(ex) == {
            frozenset({"hurt"}),
            frozenset({"precipitation", "warm"}),
        }

    def test_is_solution(self, ex):
        assert oracle_is_solution(ex, {"hurt"})
        assert oracle_is_solution(ex, {"hurt", "warm"})
        assert not oracle_is_solution(ex, {"warm"})
        assert not oracle_is_solution(ex, set())

    def test_matches_literal_definition(self, ex):
        assert oracle_solve(ex) == hand_solutions(ex)


class TestEdgeCases:
    def test_empty_set_can_be_a_solution(self):
        inst = build_instance(["m"], [], ["m"], [[(True, "m")]])
        assert oracle_is_solution(inst, set())
        assert oracle_solve(inst) == {frozenset()}
        assert oracle_subset_minimal(inst) == {frozenset()}

    def test_inconsistent_theory_has_no_solutions(self):
        inst = build_instance(
            ["h", "m"], ["h"], ["m"], [[(True, "m")], [(False, "m")]]
        )
        assert oracle_solve(inst) == frozenset()

    def test_unreachable_manifestation(self):
        inst = build_instance(["h", "m"], ["h"], ["m"], [])
        assert oracle_solve(inst) == frozenset()

    def test_hypothesis_forcing_inconsistency_is_no_solution(self):
        inst = build_instance(
            ["h", "m"],
            ["h"],
            ["m"],
            [[(False, "h")], [(True, "m")]],
        )
        assert oracle_is_solution(inst, set())
        assert not oracle_is_solution(inst, {"h"})

    def test_non_hypothesis_name_rejected(self, ex):
        with pytest.raises(ValueError):
            oracle_is_solution(ex, {"sad"})

    def test_var_cap(self):
        names = [f"v{i}" for i in range(VAR_CAP + 1)]
        inst = build_instance(names, [names[0]], [names[1]], [])
        with pytest.raises(CapExceeded):
            oracle_solve(inst)

    def test_hyp_cap(self):
        names = [f"v{i}" for i in range(HYP_CAP + 2)]
        inst = build_instance(names, names[: HYP_CAP + 1], [names[-1]], [])
        with pytest.raises(CapExceeded):
            oracle_solve(inst)


class TestAgainstLiteralDefinition:
    @pytest.mark.parametrize("base_class", ["horn", "krom"])
    def test_corpus_slice(self, base_class):
        for inst, _ in seeded_corpus(base_class, 25):
            assert oracle_solve(inst) == hand_solutions(inst)

    def test_minimality_is_minimal(self):
        for inst, _ in seeded_corpus("horn", 25):
            sols = oracle_solve(inst)
            minimal = oracle_subset_minimal(inst)
            assert minimal <= sols
            for m in minimal:
                assert not any(s < m for s in sols)
            for s in sols:
                assert any(m <= s for m in minimal)
