"""Instance parsing, validation, and the seeded generator."""

import json

import pytest

from abdsat.backdoor import verify_strong_backdoor
from abdsat.errors import InstanceError
from abdsat.formula import Clause, is_horn, is_krom, neg, pos, reduct
from abdsat.instance import (
    GenLimits,
    build_instance,
    load_instance,
    parse_instance,
    parse_instance_json,
    random_instance,
)

from conftest import EXAMPLE_PATH, assignments

EXAMPLE_TEXT = EXAMPLE_PATH.read_text()


class TestParseText:
    def test_example_round_trip(self, ex):
        assert [v.name for v in ex.variables] == [
            "snows", "rains", "precipitation", "warm", "hurt", "sad",
        ]
        assert ex.hyp_names == ("precipitation", "warm", "hurt")
        assert ex.man_names == ("sad",)
        assert len(ex.theory) == 4
        snows = ex.var_by_name("snows")
        rains = ex.var_by_name("rains")
        p = ex.var_by_name("precipitation")
        assert ex.theory.clauses[0] == Clause([neg(p), pos(rains), pos(snows)])

    def test_indices_follow_var_line(self, ex):
        assert [v.index for v in ex.variables] == [0, 1, 2, 3, 4, 5]

    def test_comments_and_blank_lines(self):
        inst = parse_instance(
            "# leading comment\n\nvar a b  # trailing\nhyp a\nman b\nclause -a b\n"
        )
        assert inst.hyp_names == ("a",)

    def test_empty_clause_line(self):
        inst = parse_instance("var a\nclause\n")
        assert inst.theory.clauses == (Clause(),)

    def test_accumulating_hyp_lines(self):
        inst = parse_instance("var a b c\nhyp a\nhyp b\nman c\n")
        assert inst.hyp_names == ("a", "b")

    def test_duplicate_declarations_collapse(self):
        inst = parse_instance("var a b\nhyp a a\nman b\n")
        assert inst.hyp_names == ("a",)

    def test_second_var_line_rejected(self):
        with pytest.raises(InstanceError, match="line 2"):
            parse_instance("var a\nvar b\n")

    def test_missing_var_line_rejected(self):
        with pytest.raises(InstanceError, match="var line"):
            parse_instance("hyp a\n")

    def test_empty_var_line_rejected(self):
        with pytest.raises(InstanceError, match="line 1"):
            parse_instance("var\n")

    def test_unknown_directive_rejected(self):
        with pytest.raises(InstanceError, match="line 3"):
            parse_instance("var a\nhyp a\nfrobnicate a\n")

    def test_bare_minus_rejected(self):
        with pytest.raises(InstanceError, match="line 2"):
            parse_instance("var a\nclause - a\n")

    def test_undeclared_clause_variable_rejected(self):
        with pytest.raises(InstanceError, match="undeclared"):
            parse_instance("var a\nclause b\n")

    def test_undeclared_hypothesis_rejected(self):
        with pytest.raises(InstanceError, match="undeclared"):
            parse_instance("var a\nhyp q\n")


class TestParseJson:
    def test_round_trip_matches_text(self, ex):
        data = {
            "vars": ["snows", "rains", "precipitation", "warm", "hurt", "sad"],
            "hyps": ["precipitation", "warm", "hurt"],
            "mans": ["sad"],
            "clauses": [
                ["-precipitation", "rains", "snows"],
                ["-hurt", "sad"],
                ["-warm", "-snows"],
                ["-rains", "sad"],
            ],
        }
        inst = parse_instance_json(json.dumps(data))
        assert inst.theory == ex.theory
        assert inst.hyp_names == ex.hyp_names
        assert inst.man_names == ex.man_names

    def test_invalid_json_rejected(self):
        with pytest.raises(InstanceError, match="invalid JSON"):
            parse_instance_json("{nope")

    def test_missing_key_rejected(self):
        with pytest.raises(InstanceError, match="mans"):
            parse_instance_json('{"vars": ["a"], "hyps": [], "clauses": []}')

    def test_bad_literal_rejected(self):
        with pytest.raises(InstanceError, match="bad literal"):
            parse_instance_json(
                '{"vars": ["a"], "hyps": [], "mans": [], "clauses": [["-"]]}'
            )

    def test_load_dispatches_on_extension(self, tmp_path, ex):
        path = tmp_path / "inst.json"
        path.write_text(
            json.dumps(
                {
                    "vars": ["a", "b"],
                    "hyps": ["a"],
                    "mans": ["b"],
                    "clauses": [["-a", "b"]],
                }
            )
        )
        inst = load_instance(str(path))
        assert inst.hyp_names == ("a",)


class TestInstanceValidation:
    def test_hypothesis_manifestation_overlap_rejected(self):
        with pytest.raises(InstanceError, match="overlap"):
            build_instance(["a", "b"], ["a"], ["a"], [])

    def test_duplicate_variable_rejected(self):
        with pytest.raises(InstanceError, match="duplicate"):
            build_instance(["a", "a"], [], [], [])

    def test_solution_vars_rejects_non_hypothesis(self, ex):
        with pytest.raises(InstanceError, match="not a hypothesis"):
            ex.solution_vars(["sad"])

    def test_solution_vars_resolves(self, ex):
        vs = ex.solution_vars(["hurt", "warm"])
        assert {v.name for v in vs} == {"hurt", "warm"}


class TestGenerator:
    def test_deterministic(self):
        a1, b1 = random_instance(42)
        a2, b2 = random_instance(42)
        assert a1.theory == a2.theory
        assert a1.hyp_names == a2.hyp_names
        assert b1 == b2

    def test_seeds_differ(self):
        a, _ = random_instance(1)
        b, _ = random_instance(2)
        assert a.theory != b.theory or a.hyp_names != b.hyp_names

    @pytest.mark.parametrize("base_class", ["horn", "krom"])
    def test_planted_backdoor_is_strong(self, base_class):
        for seed in range(80):
            inst, planted = random_instance(
                seed, base_class=base_class, backdoor_size=3
            )
            variables = [inst.var_by_name(n) for n in planted]
            assert verify_strong_backdoor(inst.theory, variables, base_class)

    @pytest.mark.parametrize("base_class", ["horn", "krom"])
    def test_limits_respected(self, base_class):
        limits = GenLimits(vars=6, hyps=2, mans=2, clauses=8, width=3)
        for seed in range(60):
            inst, planted = random_instance(
                seed, limits, base_class=base_class, backdoor_size=2
            )
            assert len(inst.variables) <= 6
            assert 1 <= len(inst.hypotheses) <= 2
            assert 1 <= len(inst.manifestations) <= 2
            assert len(inst.theory) <= 8
            assert len(planted) <= 2
            assert not set(planted) & set(inst.man_names)

    def test_reducts_land_in_class(self):
        # spot check the definitional property the plant is built around
        inst, planted = random_instance(7, base_class="krom", backdoor_size=3)
        variables = sorted(
            (inst.var_by_name(n) for n in planted), key=lambda v: v.index
        )
        check = is_krom
        for a in assignments(variables):
            assert check(reduct(inst.theory, a))
