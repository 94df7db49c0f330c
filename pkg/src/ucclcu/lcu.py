"""Assembly of the block encoding W = (B† ⊗ 1) · SELECT · (B ⊗ 1), postselected
application, and exact multi-round oblivious amplitude amplification.

Wire layout: main ancilla code wires 0..2n-1 (wire 0 = sector), then the pad
wire 2n when padding is engaged, then the system register.

The coefficient one-norm s fixes everything: postselection succeeds with
probability 1/s², and m amplification rounds are exact precisely when s equals
s_m = 1/sin(pi/(2(2m+1))) (s_0 = 1, s_1 = 2, s_2 ≈ 3.23607).  For any other s
the bank is padded: one extra ancilla wire carries an identity-labeled branch
of weight c = (s_m - s)/2 whose sign is flipped by a single controlled PHASE,
while +c is folded into the identity code of the main bank — the identity
contributions cancel, and the padded one-norm lands on s_m exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, apply_circuit
from .errors import DimensionError
from .fermion import UccFactor, exact_unitary
from .prepare import lcu_coefficients, synth_prepare
from .select import SelectPlan, derive_select_plan, synth_select

#: pad engages above this surplus; below it the s_m mismatch is float dust
_PAD_THRESHOLD = 5e-13


def exact_amplification_one_norm(m: int) -> float:
    """s_m = 1/sin(pi/(2(2m+1))): the one-norm at which m rounds are exact."""
    if m < 0:
        raise ValueError("round count must be >= 0")
    return 1.0 / math.sin(math.pi / (2.0 * (2 * m + 1)))


def assemble_w(prep: Circuit, select: Circuit, identity_code: int = 0,
               code_wires: int | None = None) -> Circuit:
    """Concatenate B, SELECT, B† on a shared register.

    identity_code aligns the two halves: PREPARE places the identity
    coefficient on the all-zeros code while the plan maps identity_code to the
    identity string, so SELECT is conjugated by X gates on the set bits of
    identity_code (over the first code_wires ancilla wires).
    """
    if prep.num_qubits > select.num_ancilla:
        raise DimensionError("prepare register does not fit in select's ancilla")
    cw = prep.num_qubits if code_wires is None else code_wires
    relabel = [w for w in range(cw) if (identity_code >> (cw - 1 - w)) & 1]
    circ = Circuit(select.num_qubits, num_ancilla=select.num_ancilla)
    circ.extend(prep.gates)
    for w in relabel:
        circ.append(Gate("X", (w,)))
    circ.extend(select.gates)
    for w in relabel:
        circ.append(Gate("X", (w,)))
    circ.extend(prep.compose_adjoint().gates)
    return circ


def reflection_on_ancilla(num_ancilla: int, width: int) -> list[Gate]:
    """R = 1 - 2|0..0><0..0| on the ancilla block, as X · (anticontrolled
    PHASE(pi)) · X on wire 0."""
    controls = tuple((q, "-") for q in range(1, num_ancilla))
    return [Gate("X", (0,)),
            Gate("PHASE", (0,), math.pi, controls),
            Gate("X", (0,))]


@dataclass
class LcuAssembly:
    """Everything the verifier and the CLI need about one assembled factor."""

    factor: UccFactor
    plan: SelectPlan
    s_one_norm: float
    s_effective: float
    pad_qubits: int
    oaa_rounds: int
    prep_circuit: Circuit
    select_circuit: Circuit
    w_circuit: Circuit
    oaa_circuit: Circuit

    @property
    def num_ancilla(self) -> int:
        return 2 * self.factor.rank + self.pad_qubits

    @property
    def total_qubits(self) -> int:
        return self.num_ancilla + self.factor.num_qubits


def pad_and_synth_oaa(f: UccFactor, target_rounds: int | None = None) -> LcuAssembly:
    """Pad the one-norm to the nearest exact-amplification value and emit the
    m-round amplification circuit -W R W† R ... W.

    Rounds default to the smallest m with s_m >= s (up to 1e-12 slack; if s
    overshoots s_m by float dust the next m is taken so the protocol stays
    exact).  With target_rounds given, s_m(target) must be reachable, i.e.
    >= s.
    """
    n = f.rank
    na = 2 * n
    plan = derive_select_plan(f)
    s = lcu_coefficients(n, f.theta).s_one_norm
    if target_rounds is None:
        m = 0
        while exact_amplification_one_norm(m) < s - 1e-12:
            m += 1
        if exact_amplification_one_norm(m) < s:
            m += 1  # s beat s_m by float dust; padding keeps exactness
    else:
        m = int(target_rounds)
        if exact_amplification_one_norm(m) < s - 1e-12:
            raise ValueError(
                f"{m} rounds are exact at one-norm {exact_amplification_one_norm(m):.6f}"
                f" < s = {s:.6f}; padding can only raise the one-norm")
    s_m = exact_amplification_one_norm(m)
    c = max((s_m - s) / 2.0, 0.0)
    pad = 1 if c > _PAD_THRESHOLD else 0
    if not pad:
        c = 0.0

    core = synth_prepare(n, f.theta, identity_offset=c)
    if pad:
        prep = Circuit(na + 1, num_ancilla=na + 1)
        omega = 2.0 * math.asin(math.sqrt(c / s_m))
        prep.append(Gate("RY", (na,), omega))
        for g in core.gates:
            prep.append(Gate(g.kind, g.targets, g.angle,
                             g.controls + ((na, "-"),)))
    else:
        prep = core

    select = synth_select(f, plan, system_offset=na + pad)
    if pad:
        # the -c branch: phase-flip (pad=1, main = identity code)
        controls = tuple((w, "+" if (plan.identity_code >> (na - 1 - w)) & 1 else "-")
                         for w in range(na))
        select.append(Gate("PHASE", (na,), math.pi, controls))

    w = assemble_w(prep, select, plan.identity_code, code_wires=na)

    oaa = Circuit(w.num_qubits, list(w.gates), w.num_ancilla)
    if m > 0:
        reflect = reflection_on_ancilla(na + pad, w.num_qubits)
        w_dag = w.compose_adjoint()
        for _ in range(m):
            oaa.extend(reflect)
            oaa.extend(w_dag.gates)
            oaa.extend(reflect)
            oaa.extend(w.gates)
            oaa.append(Gate("GLOBALPHASE", (), math.pi))

    s_eff = s + 2.0 * c
    assert abs(s_eff - s_m) <= 1e-12 or m == 0
    return LcuAssembly(f, plan, s, s_eff, pad, m, prep, select, w, oaa)


def apply_postselected(w: Circuit, psi: np.ndarray) -> tuple[np.ndarray, float]:
    """Apply W to |0>_anc ⊗ psi, project the ancilla onto |0>, renormalize.

    Returns (postselected system state, success probability).  A vanishing
    projection flags a synthesis bug and raises.
    """
    num_sys = w.num_qubits - w.num_ancilla
    dim_sys = 1 << num_sys
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (dim_sys,):
        raise DimensionError(f"state must have dimension {dim_sys}")
    full = np.zeros(1 << w.num_qubits, dtype=complex)
    full[:dim_sys] = psi
    out = apply_circuit(w, full).reshape(-1, dim_sys)
    block = out[0]
    probability = float(np.linalg.norm(block) ** 2)
    if probability < 1e-12:
        raise RuntimeError("postselection probability ~ 0; synthesis bug")
    return block / math.sqrt(probability), probability


def ancilla_zero_block(circuit: Circuit) -> tuple[np.ndarray, float]:
    """(⟨0|_anc C |0⟩_anc as a system matrix, spectral norm of the leakage)."""
    num_sys = circuit.num_qubits - circuit.num_ancilla
    dim_sys = 1 << num_sys
    cols = np.zeros((1 << circuit.num_qubits, dim_sys), dtype=complex)
    cols[:dim_sys] = np.eye(dim_sys)
    out = apply_circuit(circuit, cols)
    block = out[:dim_sys]
    leakage = float(np.linalg.norm(out[dim_sys:], 2)) if out.shape[0] > dim_sys else 0.0
    return block, leakage


def phase_aligned_deviation(matrix: np.ndarray,
                            reference: np.ndarray) -> tuple[float, float]:
    """min_phi ||e^{i phi} M - U||_2 and the minimizing phi.

    phi maximizes Re(e^{i phi} tr(U† M)); the reported deviation is the
    spectral norm at that phi.
    """
    overlap = np.trace(reference.conj().T @ matrix)
    phi = 0.0 if abs(overlap) < 1e-12 else float(-np.angle(overlap))
    deviation = float(np.linalg.norm(np.exp(1j * phi) * matrix - reference, 2))
    return deviation, phi


@dataclass(frozen=True, slots=True)
class EndToEndReport:
    theta: float
    mode: str
    s_one_norm: float
    s_effective: float
    rounds: int
    pad_qubits: int
    deviation: float
    leakage: float
    phase_alignment: float
    success_probability: float | None
    tolerance: float
    passed: bool


def verify_end_to_end(f: UccFactor, mode: str = "oaa",
                      tolerance: float = 1e-8) -> EndToEndReport:
    """Compare the realized system block against the exact unitary.

    mode "postselect": unpadded W; deviation of s·⟨0|W|0⟩ from U after global
    phase alignment, plus the success-probability cross-check p = 1/s².
    mode "oaa": padded m-round amplification; the block itself must equal U
    and the ancilla leakage must vanish, both within tolerance.
    """
    if mode not in ("postselect", "oaa"):
        raise ValueError("mode must be 'postselect' or 'oaa'")
    n = f.rank
    reference = exact_unitary(f)
    if mode == "postselect":
        plan = derive_select_plan(f)
        prep = synth_prepare(n, f.theta)
        select = synth_select(f, plan)
        w = assemble_w(prep, select, plan.identity_code, code_wires=2 * n)
        s = lcu_coefficients(n, f.theta).s_one_norm
        block, leakage = ancilla_zero_block(w)
        deviation, phi = phase_aligned_deviation(s * block, reference)
        probability = float(np.linalg.norm(block, 2) ** 2)
        prob_ok = abs(probability - 1.0 / (s * s)) <= 1e-9
        return EndToEndReport(f.theta, mode, s, s, 0, 0, deviation, leakage,
                              phi, probability, tolerance,
                              deviation <= tolerance and prob_ok)
    assembly = pad_and_synth_oaa(f)
    block, leakage = ancilla_zero_block(assembly.oaa_circuit)
    deviation, phi = phase_aligned_deviation(block, reference)
    return EndToEndReport(f.theta, mode, assembly.s_one_norm,
                          assembly.s_effective, assembly.oaa_rounds,
                          assembly.pad_qubits, deviation, leakage, phi, None,
                          tolerance,
                          deviation <= tolerance and leakage <= tolerance)
