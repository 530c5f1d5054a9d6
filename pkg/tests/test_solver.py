"""DIMACS round trips, the built-in DPLL, external backends, enumeration,

and the sequential at-most-k counter."""

import sys

import pytest

from abdsat.errors import SolverNotFound, SolverOutputError
from abdsat.formula import (
    Clause,
    CnfFormula,
    Variable,
    VariablePool,
    evaluate,
    neg,
    pos,
)
from abdsat.solver import (
    SolverConfig,
    at_most_k,
    builtin_solve,
    enumerate_models,
    parse_dimacs,
    solve,
    to_dimacs,
)

from conftest import assignments

A, B, C = Variable("a", 0), Variable("b", 1), Variable("c", 2)

DIMACS_CLI = SolverConfig(f"{sys.executable} -m abdsat.dimacs_cli {{file}}")


class TestToDimacs:
    def test_no_clauses(self):
        assert to_dimacs(CnfFormula([], [A])) == "p cnf 1 0\n"

    def test_empty_clause_only(self):
        cnf = CnfFormula([Clause()], [])
        assert to_dimacs(cnf) == "p cnf 0 1\n0\n"

    def test_example_theory(self, ex):
        text = to_dimacs(ex.theory)
        lines = text.splitlines()
        assert lines[0] == "p cnf 6 4"
        assert lines[1] == "1 2 -3 0"
        assert lines[2] == "-5 6 0"
        assert lines[3] == "-1 -4 0"
        assert lines[4] == "-2 6 0"
        assert text.endswith("\n")


class TestParseDimacs:
    def test_round_trip(self, ex):
        text = to_dimacs(ex.theory)
        again = parse_dimacs(text)
        assert to_dimacs(again) == text

    def test_comments_skipped(self):
        cnf = parse_dimacs("c hello\np cnf 2 1\n% tail\n1 -2 0\n")
        assert len(cnf) == 1

    def test_clause_split_across_lines(self):
        cnf = parse_dimacs("p cnf 2 1\n1\n-2 0\n")
        assert len(cnf) == 1
        assert len(cnf.clauses[0]) == 2

    def test_bad_header(self):
        with pytest.raises(SolverOutputError, match="header"):
            parse_dimacs("p sat 2 1\n1 0\n")

    def test_missing_header(self):
        with pytest.raises(SolverOutputError, match="header"):
            parse_dimacs("1 0\n")

    def test_literal_out_of_range(self):
        with pytest.raises(SolverOutputError, match="exceeds"):
            parse_dimacs("p cnf 1 1\n2 0\n")

    def test_trailing_literals(self):
        with pytest.raises(SolverOutputError, match="trailing"):
            parse_dimacs("p cnf 2 1\n1 -2\n")


class TestBuiltin:
    def test_empty_formula_sat(self):
        res = builtin_solve(CnfFormula([], [A]))
        assert res.is_sat and res.model[A] is False

    def test_empty_clause_unsat(self):
        assert builtin_solve(CnfFormula([Clause()], [A])).status == "unsat"

    def test_units_propagate(self):
        cnf = CnfFormula(
            [Clause([pos(A)]), Clause([neg(A), pos(B)]), Clause([neg(B), neg(C)])],
            [A, B, C],
        )
        res = builtin_solve(cnf)
        assert res.is_sat
        assert res.model == {A: True, B: True, C: False}

    def test_conflict_needs_backtracking(self):
        cnf = CnfFormula(
            [
                Clause([pos(A), pos(B)]),
                Clause([pos(A), neg(B)]),
                Clause([neg(A), pos(C)]),
            ],
            [A, B, C],
        )
        res = builtin_solve(cnf)
        assert res.is_sat and evaluate(cnf, res.model)

    def test_unsat_full_square(self):
        cnf = CnfFormula(
            [
                Clause([pos(A), pos(B)]),
                Clause([pos(A), neg(B)]),
                Clause([neg(A), pos(B)]),
                Clause([neg(A), neg(B)]),
            ],
            [A, B],
        )
        assert builtin_solve(cnf).status == "unsat"

    def test_deterministic(self):
        cnf = CnfFormula(
            [Clause([pos(A), pos(B)]), Clause([neg(B), pos(C)])], [A, B, C]
        )
        assert builtin_solve(cnf).model == builtin_solve(cnf).model

    def test_tautologies_ignored(self):
        cnf = CnfFormula([Clause([pos(A), neg(A)])], [A])
        assert builtin_solve(cnf).is_sat

    def test_matches_truth_table(self):
        import random

        rng = random.Random(9)
        vs = [Variable(f"v{i}", i) for i in range(5)]
        for _ in range(80):
            clauses = [
                Clause(
                    (pos if rng.random() < 0.5 else neg)(rng.choice(vs))
                    for _ in range(rng.randint(1, 3))
                )
                for _ in range(rng.randint(1, 8))
            ]
            cnf = CnfFormula(clauses, vs)
            expect = any(evaluate(cnf, a) for a in assignments(vs))
            res = builtin_solve(cnf)
            assert res.is_sat == expect
            if res.is_sat:
                assert evaluate(cnf, res.model)


class TestExternal:
    def test_bundled_cli_agrees_with_builtin(self, ex):
        sat = ex.theory
        unsat = CnfFormula(
            [Clause([pos(A)]), Clause([neg(A)])], [A, B, C]
        )
        for cnf in (sat, unsat):
            assert solve(cnf, DIMACS_CLI).status == builtin_solve(cnf).status

    def test_external_model_is_reverified(self):
        cnf = CnfFormula([Clause([pos(A)])], [A])
        liar = SolverConfig("sh -c 'printf \"s SATISFIABLE\\nv -1 0\\n\"'")
        with pytest.raises(SolverOutputError, match="not a model"):
            solve(cnf, liar)

    def test_exit_code_fallback(self):
        cnf = CnfFormula([Clause([neg(A)])], [A])
        quiet_sat = SolverConfig("sh -c 'exit 10'")
        assert solve(cnf, quiet_sat).is_sat
        quiet_unsat = SolverConfig("sh -c 'exit 20'")
        assert solve(cnf, quiet_unsat).status == "unsat"

    def test_unparseable_output_raises(self):
        cnf = CnfFormula([], [A])
        broken = SolverConfig("sh -c 'exit 3'")
        with pytest.raises(SolverOutputError, match="exit code 3"):
            solve(cnf, broken)

    def test_missing_binary_raises(self):
        cnf = CnfFormula([], [A])
        with pytest.raises(SolverNotFound):
            solve(cnf, SolverConfig("no-such-solver-anywhere"))

    def test_model_literal_out_of_range(self):
        cnf = CnfFormula([], [A])
        chatty = SolverConfig("sh -c 'printf \"s SATISFIABLE\\nv 7 0\\n\"'")
        with pytest.raises(SolverOutputError, match="out of range"):
            solve(cnf, chatty)


class TestEnumerateModels:
    def test_distinct_on_projection(self):
        cnf = CnfFormula([Clause([pos(A), pos(B)])], [A, B])
        models = list(enumerate_models(cnf, [A, B]))
        assert len(models) == 3
        assert len({(m[A], m[B]) for m in models}) == 3

    def test_projection_collapses(self):
        cnf = CnfFormula([Clause([pos(A), pos(B)])], [A, B])
        assert len(list(enumerate_models(cnf, [A]))) == 2

    def test_empty_projection_yields_once(self):
        cnf = CnfFormula([], [A, B])
        assert len(list(enumerate_models(cnf, []))) == 1

    def test_unsat_yields_nothing(self):
        cnf = CnfFormula([Clause()], [A])
        assert list(enumerate_models(cnf, [A])) == []


class TestAtMostK:
    def test_negative_k_rejected(self):
        pool = VariablePool()
        with pytest.raises(ValueError):
            at_most_k([], -1, pool)

    def test_k_zero_gives_units(self):
        pool = VariablePool()
        vs = [pool.fresh(n) for n in "ab"]
        clauses = at_most_k(vs, 0, pool)
        assert clauses == [Clause([neg(vs[0])]), Clause([neg(vs[1])])]

    def test_k_at_least_n_is_free(self):
        pool = VariablePool()
        vs = [pool.fresh(n) for n in "ab"]
        assert at_most_k(vs, 2, pool) == []
        assert at_most_k(vs, 5, pool) == []

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_exhaustive_semantics(self, k):
        pool = VariablePool()
        vs = [pool.fresh(f"x{i}") for i in range(4)]
        clauses = at_most_k(vs, k, pool)
        aux = [v for v in pool.variables if v not in vs]
        cnf = CnfFormula(clauses, pool.variables)
        for base in assignments(vs):
            popcount = sum(base.values())
            extendable = any(
                evaluate(cnf, {**base, **extra}) for extra in assignments(aux)
            )
            assert extendable == (popcount <= k), (base, k)
