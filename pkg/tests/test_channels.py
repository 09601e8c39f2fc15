"""Decoherence channels: Kraus route vs closed-form block-Bloch route."""

import numpy as np
import pytest

from xqmetro.channels import (
    ChannelKind,
    ChannelParam,
    apply_channel_compact,
    apply_kraus,
    apply_kraus_dense,
    bloch_damping_factors,
    damped_bloch,
    kraus_operators,
)
from xqmetro.errors import BadParameterError, BadProbabilityError
from xqmetro.ghz import werner_ghz
from xqmetro.xstate import bloch_from_xstate, random_xstate, xstate_from_bloch

ALL_KINDS = tuple(ChannelKind)
P_GRID = tuple(float(p) for p in np.linspace(0.0, 1.0, 11))


class TestChannelParam:
    def test_survival_and_kraus_weight(self):
        param = ChannelParam(0.4)
        assert abs(param.survival - 0.6) < 1e-15
        assert abs(param.p_prime - 0.3) < 1e-15

    @pytest.mark.parametrize("bad", [-0.1, 1.1, float("nan")])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(BadProbabilityError):
            ChannelParam(bad)

    def test_unknown_label_rejected(self):
        with pytest.raises(BadParameterError):
            ChannelKind.from_label("amplitude")

    def test_labels_roundtrip(self):
        for kind in ALL_KINDS:
            assert ChannelKind.from_label(kind.value) is kind


class TestKrausOperators:
    def test_completeness_all_channels(self):
        for kind in ALL_KINDS:
            for p in P_GRID:
                ops = kraus_operators(kind, ChannelParam(p))
                total = sum(op.conj().T @ op for op in ops)
                assert np.abs(total - np.eye(2)).max() <= 1e-14

    def test_phase_damping_operator_count_and_shape(self):
        ops = kraus_operators(ChannelKind.PHASE_DAMPING, ChannelParam(0.3))
        assert len(ops) == 3
        np.testing.assert_allclose(ops[0], np.sqrt(0.7) * np.eye(2), atol=1e-15)
        np.testing.assert_allclose(ops[1], np.sqrt(0.3) * np.diag([1.0, 0.0]), atol=1e-15)
        np.testing.assert_allclose(ops[2], np.sqrt(0.3) * np.diag([0.0, 1.0]), atol=1e-15)

    def test_depolarizing_weights(self):
        p = 0.4
        ops = kraus_operators(ChannelKind.DEPOLARIZING, ChannelParam(p))
        assert len(ops) == 4
        np.testing.assert_allclose(ops[0], np.sqrt(1.0 - 0.3) * np.eye(2), atol=1e-15)
        for op in ops[1:]:
            assert abs(np.abs(op).max() - np.sqrt(0.1)) < 1e-15

    def test_phase_flip_operators(self):
        p = 0.25
        ops = kraus_operators(ChannelKind.PHASE_FLIP, ChannelParam(p))
        assert len(ops) == 2
        np.testing.assert_allclose(ops[0], np.sqrt(0.75) * np.eye(2), atol=1e-15)
        np.testing.assert_allclose(ops[1], np.sqrt(0.25) * np.diag([1.0, -1.0]), atol=1e-15)


class TestChannelAction:
    def test_identity_at_zero_noise(self):
        rng = np.random.default_rng(41)
        state = random_xstate(rng)
        for kind in ALL_KINDS:
            out = apply_kraus(state, kind, ChannelParam(0.0))
            np.testing.assert_allclose(out.diag, state.diag, atol=1e-14)
            np.testing.assert_allclose(out.anti, state.anti, atol=1e-14)

    def test_depolarizing_full_strength_maximally_mixed(self):
        rng = np.random.default_rng(42)
        state = random_xstate(rng)
        out = apply_kraus(state, ChannelKind.DEPOLARIZING, ChannelParam(1.0))
        np.testing.assert_allclose(out.to_dense(), np.eye(8) / 8.0, atol=1e-13)

    def test_phase_damping_coherence_cubed_populations_fixed(self):
        rng = np.random.default_rng(43)
        state = random_xstate(rng)
        p = 0.35
        out = apply_kraus(state, ChannelKind.PHASE_DAMPING, ChannelParam(p))
        s = 1.0 - p
        np.testing.assert_allclose(out.diag, state.diag, atol=1e-14)
        np.testing.assert_allclose(out.anti, state.anti * s**3, atol=1e-14)

    def test_phase_flip_coherence_factor(self):
        rng = np.random.default_rng(44)
        state = random_xstate(rng)
        for p in (0.2, 0.5, 0.8):
            out = apply_kraus(state, ChannelKind.PHASE_FLIP, ChannelParam(p))
            g = 1.0 - 2.0 * p
            np.testing.assert_allclose(out.diag, state.diag, atol=1e-14)
            np.testing.assert_allclose(out.anti, state.anti * g**3, atol=1e-14)

    def test_trace_preserved(self):
        rng = np.random.default_rng(45)
        state = random_xstate(rng)
        for kind in ALL_KINDS:
            for p in P_GRID:
                out = apply_kraus_dense(state.to_dense(), kind, ChannelParam(p))
                assert abs(np.trace(out) - 1.0) < 1e-13


class TestRouteEquivalence:
    def test_kraus_equals_bloch_route(self):
        rng = np.random.default_rng(46)
        for _ in range(60):
            state = random_xstate(rng)
            bloch = bloch_from_xstate(state)
            for kind in ALL_KINDS:
                for p in P_GRID:
                    param = ChannelParam(p)
                    via_kraus = apply_kraus(state, kind, param).to_dense()
                    via_bloch = xstate_from_bloch(damped_bloch(kind, bloch, param)).to_dense()
                    assert np.abs(via_kraus - via_bloch).max() <= 1e-12

    def test_compact_route_equals_kraus(self):
        rng = np.random.default_rng(47)
        state = random_xstate(rng)
        for kind in ALL_KINDS:
            param = ChannelParam(0.45)
            a = apply_channel_compact(state, kind, param)
            b = apply_kraus(state, kind, param)
            np.testing.assert_allclose(a.diag, b.diag, atol=1e-13)
            np.testing.assert_allclose(a.anti, b.anti, atol=1e-13)

    def test_asymmetric_diagonal_mixing(self):
        # Distinct populations exercise the longitudinal-sector mixing of the
        # depolarizing map, which is not a plain per-coordinate scaling.
        diag = np.array([0.30, 0.05, 0.10, 0.02, 0.08, 0.15, 0.20, 0.10])
        from xqmetro.xstate import XState

        state = XState(diag, np.zeros(4, dtype=complex))
        bloch = bloch_from_xstate(state)
        for p in (0.2, 0.5, 0.8):
            param = ChannelParam(p)
            a = apply_kraus(state, ChannelKind.DEPOLARIZING, param).to_dense()
            b = xstate_from_bloch(
                damped_bloch(ChannelKind.DEPOLARIZING, bloch, param)
            ).to_dense()
            assert np.abs(a - b).max() <= 1e-13


class TestBlochFactors:
    def test_factor_table(self):
        param = ChannelParam(0.3)
        assert bloch_damping_factors(ChannelKind.PHASE_DAMPING, param) == (0.7, 1.0)
        assert bloch_damping_factors(ChannelKind.DEPOLARIZING, param) == (0.7, 0.7)
        ft, fz = bloch_damping_factors(ChannelKind.PHASE_FLIP, param)
        assert abs(ft - 0.4) < 1e-15 and fz == 1.0

    def test_transverse_contraction(self):
        rng = np.random.default_rng(48)
        state = random_xstate(rng)
        w = bloch_from_xstate(state).w
        for kind in ALL_KINDS:
            for p in (0.1, 0.4, 0.9):
                out = damped_bloch(kind, bloch_from_xstate(state), ChannelParam(p)).w
                for j in range(4):
                    assert (
                        np.linalg.norm(out[j, 1:]) <= np.linalg.norm(w[j, 1:]) + 1e-12
                    )

    def test_werner_depolarized_block_weights(self):
        # Damped mixing-parameter family: corner blocks carry
        # (1 + 3S^2(1-q))/4, the six central populations pair to
        # (1 - S^2(1-q))/4 each.
        q, p = 0.3, 0.25
        s = 1.0 - p
        out = damped_bloch(
            ChannelKind.DEPOLARIZING, bloch_from_xstate(werner_ghz(q)), ChannelParam(p)
        ).w
        assert abs(out[0, 0] - (1.0 + 3.0 * s**2 * (1.0 - q)) / 4.0) < 1e-13
        for j in (1, 2, 3):
            assert abs(out[j, 0] - (1.0 - s**2 * (1.0 - q)) / 4.0) < 1e-13
        assert abs(out[0, 1] - s**3 * (1.0 - q)) < 1e-13


class TestComposition:
    def test_two_step_semigroup(self):
        rng = np.random.default_rng(49)
        state = random_xstate(rng)
        p1, p2 = 0.2, 0.35
        s1, s2 = 1.0 - p1, 1.0 - p2
        combined = {
            ChannelKind.PHASE_DAMPING: 1.0 - s1 * s2,
            ChannelKind.DEPOLARIZING: 1.0 - s1 * s2,
            ChannelKind.PHASE_FLIP: (1.0 - (2.0 * s1 - 1.0) * (2.0 * s2 - 1.0)) / 2.0,
        }
        for kind in ALL_KINDS:
            two_step = apply_kraus(
                apply_kraus(state, kind, ChannelParam(p1)), kind, ChannelParam(p2)
            )
            one_step = apply_kraus(state, kind, ChannelParam(combined[kind]))
            assert np.abs(two_step.to_dense() - one_step.to_dense()).max() < 1e-13
