"""Code-to-string planning and the controlled-mask SELECT circuit."""

import json

import numpy as np
import pytest

from ucclcu.errors import PlanningError
from ucclcu.fermion import (UccFactor, chain_qubits, excitation_pauli_sum,
                            projector_pauli_sum)
from ucclcu.select import (code_phase_targets, derive_select_plan,
                           synth_select, verify_select)

ADJ2 = UccFactor((0, 1), (2, 3), 0.7, 4)
GAP2 = UccFactor((0, 1), (4, 6), 0.9, 7)


def sector_of(code, num_ancilla):
    return (code >> (num_ancilla - 1)) & 1


class TestRank2Fixtures:
    """The doubles table is pinned literally; everything else generalizes it."""

    def setup_method(self):
        self.plan = derive_select_plan(ADJ2)

    def test_reference_strings(self):
        assert self.plan.xy_reference.letters == "XXXY"
        assert self.plan.iz_reference.letters == "IZZI"
        assert self.plan.sector_qubit == 0

    def test_step_masks(self):
        by_wire = {s.wire: s.mask.letters for s in self.plan.steps}
        assert by_wire == {1: "IZZI", 2: "ZZII", 3: "IIZZ"}
        assert all(s.polarity == "+" for s in self.plan.steps)

    def test_code_endpoints(self):
        table = self.plan.code_table
        assert table[0b1000].string.letters == "XXXY"
        assert table[0b0100].string.letters == "IIII"
        assert self.plan.identity_code == 0b0100

    def test_sixteen_codes(self):
        assert len(self.plan.code_table) == 16
        xy = [e for c, e in self.plan.code_table.items() if sector_of(c, 4)]
        assert len(xy) == 8
        assert all(set(e.string.letters) <= {"X", "Y"} for e in xy)

    def test_frozen_excitation_units(self):
        # sign table established independently against the dense ladder oracle
        signs = {"XXXY": -1, "XXYX": -1, "XYXX": +1, "XYYY": -1,
                 "YXXX": +1, "YXYY": -1, "YYXY": +1, "YYYX": +1}
        for code, entry in self.plan.code_table.items():
            if sector_of(code, 4):
                assert entry.coeff_unit == signs[entry.string.letters] * 1j

    def test_frozen_projector_units(self):
        signs = {"IIII": +1, "IIZZ": +1, "IZIZ": -1, "IZZI": -1,
                 "ZIIZ": -1, "ZIZI": -1, "ZZII": +1, "ZZZZ": +1}
        for code, entry in self.plan.code_table.items():
            if not sector_of(code, 4):
                assert entry.coeff_unit == signs[entry.string.letters]


class TestPlanGeneral:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_step_count_and_shape(self, n):
        f = UccFactor(tuple(range(n)), tuple(range(n, 2 * n)), 0.3, 2 * n)
        plan = derive_select_plan(f)
        assert len(plan.steps) == 2 * n - 1
        wires = [s.wire for s in plan.steps]
        assert wires == list(range(1, 2 * n))
        for s in plan.steps:
            assert s.mask.x_mask == 0  # diagonal masks only
            assert s.mask.weight <= 2

    def test_rank1_plan(self):
        plan = derive_select_plan(UccFactor((0,), (1,), 1.1, 2))
        assert plan.xy_reference.letters == "XY"
        assert plan.iz_reference.letters == "ZZ"
        assert plan.identity_code == 0b01
        assert [s.mask.letters for s in plan.steps] == ["ZZ"]

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_sector_bijection(self, n):
        f = UccFactor(tuple(range(n)), tuple(range(n, 2 * n)), 0.4, 2 * n)
        plan = derive_select_plan(f)
        na = 2 * n
        xy = {e.string.key() for c, e in plan.code_table.items()
              if sector_of(c, na)}
        iz = {e.string.key() for c, e in plan.code_table.items()
              if not sector_of(c, na)}
        assert xy == {p.key() for p, _ in excitation_pauli_sum(f).terms()}
        assert iz == {p.key() for p, _ in projector_pauli_sum(f).terms()}
        assert len(xy) == len(iz) == 1 << (na - 1)

    @pytest.mark.parametrize("f", [
        UccFactor((0,), (1,), 0.3, 2),
        ADJ2,
        GAP2,
        UccFactor((0, 1, 2), (3, 4, 5), 0.6, 6),
    ])
    def test_xy_reference_is_least_sector_string(self, f):
        plan = derive_select_plan(f)
        least = min(p.letters for p, _ in excitation_pauli_sum(f).terms())
        assert plan.xy_reference.letters == least

    def test_gapped_chain_and_reference(self):
        # orbitals (0,1)->(4,6) on 7 qubits leave a single idle gap at 5
        plan = derive_select_plan(GAP2)
        assert plan.chains == (5,)
        assert chain_qubits(GAP2) == [5]
        assert plan.xy_reference.letters == "XXIIXZY"
        assert plan.iz_reference.letters == "IZIIZII"

    def test_deterministic_json(self):
        a = json.dumps(derive_select_plan(ADJ2).to_json_dict(), sort_keys=True)
        b = json.dumps(derive_select_plan(ADJ2).to_json_dict(), sort_keys=True)
        assert a == b

    def test_json_shape(self):
        d = derive_select_plan(ADJ2).to_json_dict()
        assert d["identity_code"] == "0100"
        assert {"code", "string", "phase", "coeff_unit"} == set(
            d["code_table"][0])
        assert all(len(e["code"]) == 4 for e in d["code_table"])
        units = {e["coeff_unit"] for e in d["code_table"]}
        assert units <= {"+1", "-1", "+i", "-i"}


class TestPhaseTargets:
    def test_theta_zero_all_unit(self):
        f = UccFactor((0, 1), (2, 3), 0.0, 4)
        plan = derive_select_plan(f)
        targets = code_phase_targets(f, plan)
        assert all(u == 1.0 for u in targets.values())

    def test_positive_theta_signs(self):
        plan = derive_select_plan(ADJ2)
        targets = code_phase_targets(ADJ2, plan)
        na = plan.num_ancilla
        for code, entry in plan.code_table.items():
            if sector_of(code, na):
                assert targets[code] == entry.coeff_unit  # sin(0.7) > 0
            elif entry.string.is_identity():
                assert targets[code] == 1.0
            else:
                assert targets[code] == -entry.coeff_unit  # cos(0.7) - 1 < 0

    def test_negative_theta_flips_excitation_sector(self):
        f = UccFactor((0, 1), (2, 3), -0.7, 4)
        plan = derive_select_plan(f)
        targets = code_phase_targets(f, plan)
        for code, entry in plan.code_table.items():
            if sector_of(code, plan.num_ancilla):
                assert targets[code] == -entry.coeff_unit

    def test_all_targets_unimodular(self):
        for theta in (0.0, 0.4, np.pi, -2.0):
            f = UccFactor((0,), (1,), theta, 2)
            targets = code_phase_targets(f, derive_select_plan(f))
            assert all(abs(abs(u) - 1.0) < 1e-15 for u in targets.values())


class TestSynthAndVerify:
    @pytest.mark.parametrize("f", [
        UccFactor((0,), (1,), 0.8, 2),
        ADJ2,
        GAP2,
        UccFactor((0, 1, 2), (3, 4, 5), 1.3, 6),
    ])
    def test_every_code_induces_its_string(self, f):
        report = verify_select(f)
        assert report.passed
        assert report.max_deviation <= 1e-10

    def test_step_gates_are_singly_controlled_z(self):
        plan = derive_select_plan(ADJ2)
        circ = synth_select(ADJ2, plan)
        step_gates = [g for g in circ.gates
                      if g.kind == "Z" and g.controls
                      and g.controls[0][0] in {1, 2, 3}]
        assert len(step_gates) == 6  # 2 per mask, 2n-1 masks
        assert all(len(g.controls) == 1 for g in step_gates)

    def test_reference_controls_split_by_sector(self):
        plan = derive_select_plan(GAP2)
        circ = synth_select(GAP2, plan)
        on_sector = [g for g in circ.gates if len(g.controls) == 1
                     and g.controls[0][0] == plan.sector_qubit]
        positives = [g for g in on_sector if g.controls[0][1] == "+"]
        negatives = [g for g in on_sector if g.controls[0][1] == "-"]
        # chain Z + four active letters on the excitation side, Z pair opposite
        assert len(positives) == 5
        assert len(negatives) == 2
        letters = sorted(g.kind for g in positives)
        assert letters == ["X", "X", "X", "Y", "Z"]

    def test_mismatched_circuit_fails_verification(self):
        flipped = UccFactor((0, 1), (2, 3), -0.7, 4)
        plan = derive_select_plan(ADJ2)
        report = verify_select(ADJ2, plan, circuit=synth_select(flipped, plan))
        assert not report.passed
        assert sector_of(report.worst_code, 4) == 1

    def test_system_offset_guard(self):
        with pytest.raises(ValueError):
            synth_select(ADJ2, system_offset=3)


class TestPlanningFailure:
    def test_missing_chain_is_detected(self, monkeypatch):
        # sabotage the idle-gap derivation: the reference string then falls
        # outside the sector's expansion and planning must refuse it
        import ucclcu.select as select_mod
        monkeypatch.setattr(select_mod, "chain_qubits", lambda f: [])
        with pytest.raises(PlanningError) as err:
            derive_select_plan(GAP2)
        assert err.value.offending_string is not None
        assert len(err.value.offending_string) == 7

    def test_offending_string_attribute(self):
        e = PlanningError("no decomposition", "XXXY")
        assert isinstance(e, RuntimeError)
        assert e.offending_string == "XXXY"
