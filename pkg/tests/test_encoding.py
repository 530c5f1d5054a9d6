"""Encoding plumbing: variable roles, decoding, the DIMACS sidecar."""

import pytest

from abdsat.backdoor import BackdoorSet
from abdsat.encoding import EncodingBuilder, Role, decode_solution, roles_json
from abdsat.horn import encode_horn_solv
from abdsat.instance import build_instance
from abdsat.solver import solve
from abdsat.subsetmin import encode_subsetmin


def horn_bd(inst, names):
    return BackdoorSet.for_theory(
        inst.theory, [inst.var_by_name(n) for n in names], "horn"
    )


class TestBuilder:
    def test_theory_variables_come_first(self, ex):
        builder = EncodingBuilder(ex)
        names = [v.name for v in builder.pool.variables]
        assert names == [v.name for v in ex.variables]

    def test_colliding_instance_names_get_suffixed(self):
        # a user variable named like a selector must not clash with it
        inst = build_instance(
            ["@s:h", "h", "m"], ["h"], ["m"], [[(False, "h"), (True, "m")]]
        )
        builder = EncodingBuilder(inst)
        builder.add_selectors()
        names = [v.name for v in builder.pool.variables]
        assert names[0] == "@s:h"
        assert any(n.startswith("@s:h~") for n in names)

    def test_selector_implies_theory_variable(self, ex):
        bd = horn_bd(ex, ["snows"])
        enc = encode_horn_solv(ex, bd, decoupled=True)
        res = solve(enc.cnf.with_clauses([]))
        assert res.is_sat
        model = res.model
        for name, sel in enc.solution_vars.items():
            if model[sel]:
                assert model[enc.cnf.var_by_name(name)]


class TestDecode:
    def test_rejects_non_model(self, ex):
        bd = horn_bd(ex, ["snows"])
        enc = encode_horn_solv(ex, bd)
        model = {v: False for v in enc.cnf.variables}
        with pytest.raises(ValueError, match="not satisfy"):
            decode_solution(enc, model)

    def test_reads_solution_vars_only(self, ex):
        bd = horn_bd(ex, ["snows"])
        enc = encode_horn_solv(ex, bd, decoupled=True)
        res = solve(enc.cnf)
        sol = decode_solution(enc, res.model)
        assert sol <= set(ex.hyp_names)


class TestRolesJson:
    def test_sidecar_shape(self, ex):
        bd = horn_bd(ex, ["snows"])
        enc = encode_horn_solv(ex, bd, decoupled=True)
        data = roles_json(enc)
        assert data["class"] == "horn"
        assert data["mode"] == "decoupled"
        assert data["backdoor"] == ["snows"]
        assert set(data["solution_variables"]) == set(ex.hyp_names)
        assert len(data["variables"]) == enc.num_variables
        # numbering is 1-based and dense
        assert set(data["variables"]) == {
            str(i + 1) for i in range(enc.num_variables)
        }

    def test_sidecar_theory_roles(self, ex):
        bd = horn_bd(ex, ["snows"])
        enc = encode_horn_solv(ex, bd)
        data = roles_json(enc)
        theory_entries = [
            e for e in data["variables"].values() if e["role"] == "theory"
        ]
        assert {e["name"] for e in theory_entries} == {
            v.name for v in ex.variables
        }

    def test_sidecar_copy_roles(self, ex):
        bd = horn_bd(ex, ["snows"])
        enc = encode_subsetmin(ex, bd, "hurt")
        data = roles_json(enc)
        copies = [e for e in data["variables"].values() if e["role"] == "copy"]
        assert copies
        assert {e["copy"] for e in copies} <= set(ex.hyp_names)

    def test_step_roles_carry_block_and_step(self, ex):
        bd = horn_bd(ex, ["snows"])
        enc = encode_horn_solv(ex, bd)
        data = roles_json(enc)
        steps = [e for e in data["variables"].values() if e["role"] == "step"]
        assert steps
        assert all("block" in e and "step" in e for e in steps)
        assert {e["block"] for e in steps} == {0, 1}
