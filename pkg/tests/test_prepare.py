"""Coefficient families, analytic angles, and the ancilla loader."""

import math

import numpy as np
import pytest

from ucclcu.circuit import apply_circuit
from ucclcu.errors import AngleDomainError
from ucclcu.fermion import UccFactor, ucc_factor_expand
from ucclcu.prepare import (lcu_coefficients, prepare_angles,
                            prepare_target_amplitudes, synth_prepare,
                            synth_state_loader, verify_prepare)

THETAS = [-0.3, 0.3, math.pi / 4, 1.0, math.pi / 2, 2.5]


def loaded_state(circ):
    init = np.zeros(1 << circ.num_qubits, dtype=complex)
    init[0] = 1.0
    return apply_circuit(circ, init)


class TestCoefficients:
    def test_rank2_half_pi_families(self):
        c = lcu_coefficients(2, math.pi / 2)
        assert c.identity_coeff == pytest.approx(7 / 8)
        assert c.projector_coeff == pytest.approx(-1 / 8)
        assert c.excitation_coeff == pytest.approx(1j / 8)
        assert c.s_one_norm == pytest.approx(11 / 4)
        assert c.sector_size == 8

    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("theta", THETAS)
    def test_one_norm_matches_symbolic_expansion(self, n, theta):
        f = UccFactor(tuple(range(n)), tuple(range(n, 2 * n)), theta, 2 * n)
        brute = ucc_factor_expand(f).one_norm()
        assert lcu_coefficients(n, theta).s_one_norm == pytest.approx(brute,
                                                                      abs=1e-12)

    def test_theta_zero_collapses_to_identity(self):
        c = lcu_coefficients(2, 0.0)
        assert c.identity_coeff == pytest.approx(1.0)
        assert c.projector_coeff == 0.0
        assert c.excitation_coeff == 0.0
        assert c.s_one_norm == pytest.approx(1.0)

    def test_one_norm_bounded(self):
        # s = |1+(c-1)/M| + (M-1)|c-1|/M + |sin| tends to 1 + (1-cos) + |sin|
        # for large rank, whose maximum is 2 + sqrt(2) (at theta = 3pi/4)
        for n in (1, 2, 3):
            for theta in np.linspace(-math.pi, math.pi, 101):
                assert lcu_coefficients(n, float(theta)).s_one_norm \
                    < 2.0 + math.sqrt(2.0)
        # rank 1 peaks at exactly 2 (theta = pi/2)
        assert lcu_coefficients(1, math.pi / 2).s_one_norm == pytest.approx(2.0)


class TestAngles:
    def test_frozen_level1_rank2_half_pi(self):
        # arcsin(-sin(pi/2)/sqrt(8)) = arcsin(-1/(2*sqrt(2)))
        angles = prepare_angles(2, math.pi / 2)
        assert angles.values[0] == pytest.approx(math.asin(-1 / math.sqrt(8)),
                                                 abs=1e-15)
        assert angles.values[0] == pytest.approx(-0.361367, abs=1e-6)

    def test_frozen_level2_rank2_pi(self):
        # theta=pi: denominator 16, arcsin(-2/4) = -pi/6
        angles = prepare_angles(2, math.pi)
        assert angles.values[1] == pytest.approx(-math.pi / 6, abs=1e-15)

    def test_count_is_two_n(self):
        for n in (1, 2, 3):
            assert len(prepare_angles(n, 0.7)) == 2 * n

    def test_rank2_denominator_specialization(self):
        # D_2 = 14 + 2cos^2, D_3 = 26 + 2cos^2 + 4cos, D_4 = 50 + 2cos^2 + 12cos
        theta = 0.9
        ct = math.cos(theta)
        angles = prepare_angles(2, theta).values
        for k, denom in ((2, 14 + 2 * ct * ct), (3, 26 + 2 * ct * ct + 4 * ct),
                         (4, 50 + 2 * ct * ct + 12 * ct)):
            assert angles[k - 1] == pytest.approx(
                math.asin((ct - 1) / math.sqrt(denom)), abs=1e-15)

    def test_angles_at_theta_zero_vanish(self):
        assert all(a == 0.0 for a in prepare_angles(3, 0.0))


class TestTargets:
    def test_targets_are_normalized(self):
        for n in (1, 2, 3):
            for theta in THETAS:
                t = prepare_target_amplitudes(n, theta)
                assert sum(a * a for a in t) == pytest.approx(1.0, abs=1e-12)

    def test_identity_slot_rank2_half_pi(self):
        # squared identity amplitude = (7/8) / (11/4) = 7/22
        t = prepare_target_amplitudes(2, math.pi / 2)
        assert t[0] ** 2 == pytest.approx(7 / 22, abs=1e-15)

    def test_offset_shifts_identity_mass(self):
        t = prepare_target_amplitudes(2, 1.0, identity_offset=0.25)
        c = lcu_coefficients(2, 1.0)
        s = c.s_one_norm + 0.25
        assert t[0] ** 2 == pytest.approx((c.identity_coeff + 0.25) / s,
                                          abs=1e-14)


class TestSynthPrepare:
    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("theta", THETAS)
    def test_verified_mode_loads_sqrt_targets(self, n, theta):
        got = np.abs(loaded_state(synth_prepare(n, theta)))
        target = np.array(prepare_target_amplitudes(n, theta))
        assert np.max(np.abs(got - target)) <= 1e-12

    def test_verified_mode_with_identity_offset(self):
        got = np.abs(loaded_state(synth_prepare(2, 0.8, identity_offset=0.3)))
        target = np.array(prepare_target_amplitudes(2, 0.8,
                                                    identity_offset=0.3))
        assert np.max(np.abs(got - target)) <= 1e-12

    def test_theta_zero_loads_identity_slot_only(self):
        state = loaded_state(synth_prepare(2, 0.0))
        expected = np.zeros(16)
        expected[0] = 1.0
        np.testing.assert_allclose(state, expected, atol=1e-15)

    @pytest.mark.parametrize("n", [1, 2])
    def test_paper_literal_full_convention_loads_alpha_itself(self, n):
        """The analytic angles reproduce the signed coefficient vector |alpha|
        as amplitude magnitudes (the alpha vector is automatically unit norm),
        not sqrt(|alpha|/s) — the reason verified-phases is the default."""
        theta = 0.7
        c = lcu_coefficients(n, theta)
        m = c.sector_size
        alpha_mag = np.array([abs(c.identity_coeff)]
                             + [abs(c.projector_coeff)] * (m - 1)
                             + [abs(c.excitation_coeff)] * m)
        assert np.linalg.norm(alpha_mag) == pytest.approx(1.0, abs=1e-12)
        got = np.abs(loaded_state(synth_prepare(
            n, theta, mode="paper-literal", rotation_convention="full")))
        assert np.max(np.abs(got - alpha_mag)) <= 1e-12
        # and therefore misses the block-encoding targets by a visible margin
        sqrt_target = np.array(prepare_target_amplitudes(n, theta))
        assert np.max(np.abs(got - sqrt_target)) > 1e-2

    def test_mode_and_convention_validated(self):
        with pytest.raises(ValueError):
            synth_prepare(1, 0.5, mode="mystery")
        with pytest.raises(ValueError):
            synth_prepare(1, 0.5, rotation_convention="double")

    def test_gate_budget_structure(self):
        # level k contributes (2n+1-k) broadcast H's and one RY; plus the RX
        for n in (1, 2, 3):
            circ = synth_prepare(n, 0.7)
            expected = 1 + sum((2 * n + 1 - k) + 1 for k in range(2, 2 * n + 1))
            assert len(circ) == expected


class TestVerifyAndFallback:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_verified_mode_passes(self, n):
        for theta in THETAS:
            rep = verify_prepare(n, theta)
            assert rep.max_deviation <= 1e-9
            assert not rep.used_fallback

    def test_paper_literal_engages_fallback(self):
        rep = verify_prepare(2, 0.7, mode="paper-literal")
        assert rep.used_fallback
        assert rep.max_deviation > 1e-9          # the recorded defect
        assert rep.fallback_deviation <= 1e-9    # generic loader rescues it

    def test_state_loader_arbitrary_profile(self):
        amps = np.sqrt(np.array([0.4, 0.1, 0.05, 0.15, 0.0, 0.2, 0.1, 0.0]))
        got = loaded_state(synth_state_loader(amps))
        np.testing.assert_allclose(np.abs(got), amps, atol=1e-12)

    def test_state_loader_rejects_bad_input(self):
        with pytest.raises(ValueError):
            synth_state_loader([0.6, 0.8, 0.0])      # not a power of two
        with pytest.raises(ValueError):
            synth_state_loader([-0.6, 0.8])          # negative amplitude


class TestAngleDomain:
    def test_checked_arcsin_raises_beyond_slack(self):
        from ucclcu.prepare import _checked_arcsin
        with pytest.raises(AngleDomainError):
            _checked_arcsin(1.001, "test")
        # within slack: clamps instead of raising
        assert _checked_arcsin(1.0 + 1e-14, "test") == pytest.approx(math.pi / 2)
