"""SELECT synthesis: map each ancilla code to its Pauli string.

Scheme (generalizing the rank-2 construction to arbitrary rank): the ancilla
bank has 2n wires, wire 0 being the sector qubit.  Two reference strings are
applied first — the excitation reference (Y on the highest active orbital,
X on every other active orbital, Z on the idle chain qubits; the
lexicographically least string of the off-diagonal sector) positively
controlled on the sector wire, and the diagonal reference Z_{o_n} Z_{v_1}
anticontrolled on it.  Then 2n-1 steps follow, each a weight-2 Z mask applied
under a positive control on one code wire:

    wire 1          ->  Z_{o_n} Z_{v_1}        (the sector-flip mask)
    wires 2..n      ->  Z_{o_t} Z_{o_{t+1}}    (occupied adjacent pairs)
    wires n+1..2n-1 ->  Z_{v_t} Z_{v_{t+1}}    (virtual adjacent pairs)

These masks are the edge set of a path through the 2n active orbitals, hence
linearly independent over GF(2) and spanning the even-weight toggle space:
subset products reach each sector's strings exactly once.  Multiplication
phases i^k are recorded per code and cancelled by ancilla-controlled phase
gates, which also install the coefficient phases that PREPARE deliberately
does not carry (u_c := coefficient/|coefficient|, defined as 1 for zero
coefficients).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, Gate, apply_circuit
from .errors import PlanningError
from .fermion import (UccFactor, chain_qubits, excitation_pauli_sum,
                      projector_pauli_sum)
from .pauli import PauliString

_UNIT_LABELS = {(1, 0): "+1", (-1, 0): "-1", (0, 1): "+i", (0, -1): "-i"}


def _unit_label(u: complex) -> str:
    return _UNIT_LABELS[(round(u.real), round(u.imag))]


@dataclass(frozen=True, slots=True)
class SelectStep:
    """One controlled Z-mask application: two singly-controlled Z gates."""

    wire: int                 # ancilla code wire carrying the control
    polarity: str             # always "+" in this scheme
    mask: PauliString         # Z-only string, weight <= 2


@dataclass(frozen=True, slots=True)
class CodeEntry:
    """What one ancilla code must implement on the system register."""

    string: PauliString       # bare word (phase_power 0)
    phase_power: int          # i^k accumulated by the mask products
    coeff_unit: complex       # theta-free unit of the term's coefficient


@dataclass
class SelectPlan:
    rank: int
    num_qubits: int
    occupied: tuple[int, ...]
    virtuals: tuple[int, ...]
    chains: tuple[int, ...]
    sector_qubit: int
    xy_reference: PauliString
    iz_reference: PauliString
    steps: list[SelectStep]
    code_table: dict[int, CodeEntry] = field(repr=False)
    identity_code: int = 0

    @property
    def num_ancilla(self) -> int:
        return 2 * self.rank

    def to_json_dict(self) -> dict:
        na = self.num_ancilla
        return {
            "rank": self.rank,
            "num_qubits": self.num_qubits,
            "occupied": list(self.occupied),
            "virtuals": list(self.virtuals),
            "chain_qubits": list(self.chains),
            "sector_qubit": self.sector_qubit,
            "xy_reference": self.xy_reference.letters,
            "iz_reference": self.iz_reference.letters,
            "identity_code": format(self.identity_code, f"0{na}b"),
            "steps": [{"wire": s.wire, "polarity": s.polarity,
                       "mask": s.mask.letters} for s in self.steps],
            "code_table": [
                {"code": format(code, f"0{na}b"),
                 "string": entry.string.letters,
                 "phase": _UNIT_LABELS[{0: (1, 0), 1: (0, 1), 2: (-1, 0),
                                        3: (0, -1)}[entry.phase_power]],
                 "coeff_unit": _unit_label(entry.coeff_unit)}
                for code, entry in sorted(self.code_table.items())],
        }


def derive_select_plan(f: UccFactor) -> SelectPlan:
    """Choose references and Z-masks and tabulate all 2^{2n} codes.

    The plan is verified internally against the symbolic expansion (sector
    bijections, mask weights) before being returned; a failure raises
    PlanningError carrying the offending string.
    """
    n, nq = f.rank, f.num_qubits
    na = 2 * n
    occ, vir = sorted(f.occupied), sorted(f.virtuals)
    chains = tuple(chain_qubits(f))

    actives = set(occ) | set(vir)
    xy_ref = PauliString.from_label("".join(
        ("Y" if q == max(actives) else "X") if q in actives
        else ("Z" if q in chains else "I")
        for q in range(nq)))
    iz_ref = PauliString.z_on(nq, [occ[-1], vir[0]])

    steps = [SelectStep(1, "+", PauliString.z_on(nq, [occ[-1], vir[0]]))]
    wire = 2
    for t in range(n - 1):
        steps.append(SelectStep(wire, "+",
                                PauliString.z_on(nq, [occ[t], occ[t + 1]])))
        wire += 1
    for t in range(n - 1):
        steps.append(SelectStep(wire, "+",
                                PauliString.z_on(nq, [vir[t], vir[t + 1]])))
        wire += 1

    for step in steps:
        if step.mask.weight > 2 or step.mask.x_mask:
            raise PlanningError("step mask is not a weight-<=2 Z string",
                                step.mask.letters)

    excitation = excitation_pauli_sum(f)
    projector = projector_pauli_sum(f)

    code_table: dict[int, CodeEntry] = {}
    identity_code = None
    by_wire = {s.wire: s.mask for s in steps}
    for code in range(1 << na):
        sector = (code >> (na - 1)) & 1
        word = xy_ref if sector else iz_ref
        for w in range(na - 1, 0, -1):  # circuit time order; masks commute
            if (code >> (na - 1 - w)) & 1:
                word = by_wire[w].multiply(word)
        source = excitation if sector else projector
        coeff = source.coefficient(word.bare())
        if coeff == 0:
            raise PlanningError("code maps outside its sector's string set",
                                word.bare().letters)
        code_table[code] = CodeEntry(word.bare(), word.phase_power,
                                     coeff / abs(coeff))
        if word.bare().is_identity():
            identity_code = code

    for sector, source in ((1, excitation), (0, projector)):
        reached = {e.string.key() for c, e in code_table.items()
                   if (c >> (na - 1)) & 1 == sector}
        expected = {p.key() for p, _ in source.terms()}
        if reached != expected:
            missing = expected - reached
            label = PauliString(nq, *next(iter(missing))).letters if missing else "?"
            raise PlanningError("sector code map is not a bijection", label)

    assert identity_code is not None  # diagonal sector always contains I
    return SelectPlan(n, nq, tuple(occ), tuple(vir), chains, 0, xy_ref, iz_ref,
                      steps, code_table, identity_code)


def code_phase_targets(f: UccFactor, plan: SelectPlan) -> dict[int, complex]:
    """Target coefficient phase u_c per code (1 when the coefficient is 0)."""
    na = plan.num_ancilla
    sin_sign = float(np.sign(math.sin(f.theta)))
    cos_sign = float(np.sign(math.cos(f.theta) - 1.0))
    out = {}
    for code, entry in plan.code_table.items():
        if (code >> (na - 1)) & 1:
            u = entry.coeff_unit * sin_sign if sin_sign else 1.0
        elif entry.string.is_identity():
            u = 1.0  # identity coefficient 1 + (cos-1)/2^{2n-1} is >= 0
        else:
            u = entry.coeff_unit * cos_sign if cos_sign else 1.0
        out[code] = complex(u)
    return out


def synth_select(f: UccFactor, plan: SelectPlan | None = None,
                 system_offset: int | None = None) -> Circuit:
    """Emit the SELECT circuit on 2n ancilla + N system qubits.

    Gate order: sector-controlled excitation reference (chain Z's first, then
    the active-orbital letters), anticontrolled diagonal reference, the step
    masks from the highest code wire down, then the per-code phase fix-ups.

    system_offset places the system register (defaults to right after the 2n
    ancilla wires; the amplification assembler passes 2n+1 to leave room for
    its pad wire).
    """
    if plan is None:
        plan = derive_select_plan(f)
    n, nq, na = plan.rank, plan.num_qubits, plan.num_ancilla
    off = na if system_offset is None else system_offset
    if off < na:
        raise ValueError("system register overlaps the ancilla bank")
    circ = Circuit(off + nq, num_ancilla=off)

    sector = plan.sector_qubit
    for q in plan.chains:
        circ.append(Gate("Z", (off + q,), controls=((sector, "+"),)))
    for q in sorted(set(plan.occupied) | set(plan.virtuals)):
        kind = plan.xy_reference.letters[q]
        circ.append(Gate(kind, (off + q,), controls=((sector, "+"),)))
    for q in sorted(plan.iz_reference.support()):
        circ.append(Gate("Z", (off + q,), controls=((sector, "-"),)))
    for step in sorted(plan.steps, key=lambda s: -s.wire):
        for q in sorted(step.mask.support()):
            circ.append(Gate("Z", (off + q,), controls=((step.wire, step.polarity),)))

    targets = code_phase_targets(f, plan)
    for code in sorted(plan.code_table):
        entry = plan.code_table[code]
        phi = targets[code] / (1j ** entry.phase_power)
        if abs(phi - 1.0) <= 1e-12:
            continue
        angle = float(np.angle(phi))
        bits = [(w, "+" if (code >> (na - 1 - w)) & 1 else "-") for w in range(na)]
        set_wires = [w for w, p in bits if p == "+"]
        if set_wires:
            target = set_wires[0]
            controls = tuple((w, p) for w, p in bits if w != target)
            circ.append(Gate("PHASE", (target,), angle, controls))
        else:
            # all-anticontrol code: a controlled global phase does the job
            circ.append(Gate("GLOBALPHASE", (), angle, tuple(bits)))
    return circ


@dataclass(frozen=True, slots=True)
class SelectReport:
    max_deviation: float
    worst_code: int
    tolerance: float
    passed: bool


def verify_select(f: UccFactor, plan: SelectPlan | None = None,
                  circuit: Circuit | None = None,
                  tolerance: float = 1e-10) -> SelectReport:
    """Check that every ancilla basis code induces exactly its code_table
    string (target phase included) and leaves the ancilla untouched."""
    if plan is None:
        plan = derive_select_plan(f)
    if circuit is None:
        circuit = synth_select(f, plan)
    na, nq = plan.num_ancilla, plan.num_qubits
    dim_sys = 1 << nq
    targets = code_phase_targets(f, plan)
    worst, worst_code = 0.0, 0
    for code in sorted(plan.code_table):
        entry = plan.code_table[code]
        cols = np.zeros((1 << (na + nq), dim_sys), dtype=complex)
        cols[code * dim_sys:(code + 1) * dim_sys] = np.eye(dim_sys)
        out = apply_circuit(circuit, cols)
        expected = np.zeros_like(cols)
        expected[code * dim_sys:(code + 1) * dim_sys] = \
            targets[code] * entry.string.to_dense()
        deviation = float(np.linalg.norm(out - expected, 2))
        if deviation > worst:
            worst, worst_code = deviation, code
    return SelectReport(worst, worst_code, tolerance, worst <= tolerance)
