"""Damped Werner-GHZ application: pipeline family, reference closed forms, crosschecks.

The Werner-GHZ line ``rho(q) = q/8 I + (1-q) |GHZ><GHZ|`` is pushed through
each channel and the mixing parameter ``q`` is treated as the estimated
parameter.

``closed_form_qfi`` / ``closed_form_skew`` / ``closed_form_concurrence`` are
hand-derived per-channel reference expressions transcribed verbatim into this
one quarantined module.  They are *never* used by the generic pipeline
(channels + metrics); the :func:`crosscheck` engine evaluates pipeline,
closed form and brute-force oracle side by side and reports a verdict per
metric.  Known defects of the reference expressions (see the depolarizing
helpers below) therefore show up as reported deviations, not as wrong
pipeline numbers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .channels import (
    ChannelKind,
    ChannelParam,
    apply_kraus,
    apply_kraus_dense,
    damped_bloch_array,
)
from .errors import BadParameterError, XQMetroError
from .metrics import ParamFamily, concurrence_ghz_class, qfi_total, skew_total
from .oracle import OracleConfig, qfi_eigen_oracle, skew_sqrt_oracle
from .xstate import (
    XState,
    XTangent,
    bloch_from_compact,
    compact_from_bloch,
)

GHZ_QMIN = 1e-3
CLOSED_FORM_TOL = 1e-8


def _werner_compact(q: float):
    diag = np.full(8, q / 8.0)
    diag[0] = diag[7] = (4.0 - 3.0 * q) / 8.0
    anti = np.zeros(4, dtype=complex)
    anti[0] = (1.0 - q) / 2.0
    return diag, anti


_TANGENT_DIAG = np.full(8, 1.0 / 8.0)
_TANGENT_DIAG[0] = _TANGENT_DIAG[7] = -3.0 / 8.0
_TANGENT_DIAG.setflags(write=False)
_TANGENT_ANTI = np.array([-0.5, 0.0, 0.0, 0.0], dtype=complex)
_TANGENT_ANTI.setflags(write=False)


def werner_ghz(q: float) -> XState:
    """Werner-GHZ state ``q/8 I + (1-q)|GHZ><GHZ|`` for q in [0, 1]."""
    if not np.isfinite(q) or not 0.0 <= q <= 1.0:
        raise BadParameterError(f"q must lie in [0, 1], got {q!r}")
    return XState(*_werner_compact(q))


def ghz_family(kind: ChannelKind, p: float) -> ParamFamily:
    """Damped Werner-GHZ family in ``q`` through the closed-form channel route.

    The channel is linear, so the analytic tangent is the channel image of
    d rho / dq (constant in q).  The state callable accepts small
    out-of-range probes so finite-difference oracles can straddle q = 0, 1.
    """
    param = ChannelParam(p)

    def state(q: float) -> XState:
        w = damped_bloch_array(kind, bloch_from_compact(*_werner_compact(q)), param)
        return XState(*compact_from_bloch(w))

    dw = damped_bloch_array(
        kind, bloch_from_compact(_TANGENT_DIAG, _TANGENT_ANTI), param
    )
    tangent = XTangent(*compact_from_bloch(dw))
    return ParamFamily(state=state, tangent=lambda q: tangent)


def _kraus_family(kind: ChannelKind, p: float) -> ParamFamily:
    """Same family through the dense Kraus route (for oracle independence)."""
    param = ChannelParam(p)

    def state(q: float) -> XState:
        return apply_kraus(XState(*_werner_compact(q)), kind, param)

    return ParamFamily(state=state)


def _check_point(q: float, p: float) -> ChannelParam:
    if not np.isfinite(q) or not GHZ_QMIN <= q <= 1.0:
        raise BadParameterError(f"closed forms need q in [{GHZ_QMIN}, 1], got {q!r}")
    return ChannelParam(p)


def closed_form_qfi(kind: ChannelKind, q: float, p: float) -> float:
    """Reference Fisher information of the damped Werner-GHZ family.

    Transcribed verbatim per channel.  The depolarizing expression carries a
    known factor-4 deficit in its diagonal-block term — see
    :func:`depolarizing_qfi_gap`; the phase-flip expression contains one
    unbalanced fragment whose minimal reading is ``(2S-1)^6 (1-q)``.
    """
    s = _check_point(q, p).survival
    if kind is ChannelKind.PHASE_DAMPING:
        a = 4.0 - 3.0 * q
        num = (-3.0 * a / 16.0 + s**6 * (1.0 - q)) ** 2
        den = a**2 / 16.0 - s**6 * (1.0 - q) ** 2
        return 9.0 / (4.0 * a) + 3.0 / (4.0 * q) + (4.0 / a) * (
            num / den - (9.0 / 16.0 - s**6)
        )
    if kind is ChannelKind.DEPOLARIZING:
        a = 1.0 + 3.0 * s**2 - 3.0 * q * s**2
        b = s**3 - q * s**3
        num = (-3.0 * s**2 * a / 16.0 + s**3 * b) ** 2
        den = a**2 / 16.0 - b**2
        return (4.0 / a) * (num / den - (9.0 * s**4 / 16.0 - s**6)) + 3.0 * s**4 / (
            16.0 * (1.0 - s**2 + q * s**2)
        ) + 9.0 * s**4 / (4.0 * a)
    a = 4.0 - 3.0 * q
    g6 = (2.0 * s - 1.0) ** 6
    num = ((-12.0 + 9.0 * q) / 16.0 + g6 * (1.0 - q)) ** 2
    den = a**2 / 16.0 - g6 * (1.0 - q) ** 2
    return 3.0 / (4.0 * q) + 9.0 / (4.0 * a) + (4.0 / a) * (
        num / den - (9.0 / 16.0 - g6)
    )


def closed_form_concurrence(kind: ChannelKind, q: float, p: float) -> float:
    """Reference concurrence of the damped Werner-GHZ state, per channel.

    Phase damping and depolarizing are transcribed verbatim (the depolarizing
    expression deviates from the pipeline; the crosscheck reports it).  The
    phase-flip expression ``(2S-1)^3 + q(1/4 - 6S + 12S^2 - 8S^3)`` expands to
    ``(2S-1)^3 (1-q) - 3q/4``, i.e. the anti-diagonal magnitude's derivation
    with the magnitude bars dropped: past p = 1/2 the signed cube goes
    negative while the concurrence depends on |2S-1|^3, so the magnitude
    reading is used.
    """
    s = _check_point(q, p).survival
    if kind is ChannelKind.PHASE_DAMPING:
        return max(
            0.0,
            -3.0 * q / 4.0
            + (4.0 - 3.0 * q + 4.0 * s**3 - 4.0 * q * s**3) / 8.0
            + (-4.0 + 3.0 * q + 4.0 * s**3 - 4.0 * q * s**3) / 8.0,
        )
    if kind is ChannelKind.DEPOLARIZING:
        root = np.sqrt(
            16.0 * (1.0 - 2.0 * s**3 + 5.0 * s**6)
            - 8.0 * q * (3.0 - 6.0 * s**3 + 19.0 * s**6)
            + q**2 * (9.0 - 18.0 * s**3 + 73.0 * s**6)
        )
        return max(0.0, (-3.0 * q * s * (1.0 + s) + root) / 8.0)
    return max(0.0, abs(2.0 * s - 1.0) ** 3 * (1.0 - q) - 0.75 * q)


def closed_form_skew(kind: ChannelKind, q: float, p: float) -> float:
    """Reference skew information of the damped Werner-GHZ family.

    Transcribed verbatim per channel, including the depolarizing expression's
    printed inner quantities (its lambda_2 leading term and an unsquared
    coherence factor disagree with the pipeline; the crosscheck reports the
    deviation).  The phase-flip expression's coherence term uses the
    ``(2S-1)^6 (1-q)`` reading that mirrors the phase-damping structure.
    """
    s = _check_point(q, p).survival
    if kind is ChannelKind.PHASE_DAMPING:
        radicand = (4.0 - 3.0 * q) ** 2 / 16.0 - s**6 * (1.0 - q) ** 2
        k = (4.0 - 3.0 * q) / 4.0 + np.sqrt(radicand)
        lam1 = k**-0.5
        theta1 = lam1 / np.sqrt(radicand)
        gamma1 = lam1**3 / np.sqrt(radicand)
        term0 = (
            1.0
            / (4.0 * np.sqrt(radicand))
            * (-3.0 * np.sqrt(k) / 4.0 + s**6 * (1.0 - q) / np.sqrt(k))
        )
        term1 = (
            3.0 * theta1 / 16.0 * s**3 * (1.0 - q)
            - lam1 / 2.0 * s**3
            - gamma1 / 4.0 * s**9 * (1.0 - q) ** 2
        )
        return 3.0 / (4.0 * q) + 8.0 * (term0**2 + term1**2)
    if kind is ChannelKind.DEPOLARIZING:
        b = s**3 - q * s**3
        inner = ((1.0 + 3.0 * s**2) / 4.0 - 3.0 * q * s**2 / 4.0) ** 2 - b**2
        lam2 = ((1.0 + s**2) / 4.0 - 3.0 * q * s**2 / 4.0 + np.sqrt(inner)) ** -0.5
        theta2 = lam2 / np.sqrt(inner)
        gamma2 = lam2**3 / np.sqrt(inner)
        pref = 1.0 / ((1.0 + 3.0 * s**2 - 3.0 * q * s**2) ** 2 - 16.0 * b**2)
        term0_sq = pref * (-3.0 * s**2 / 4.0 / lam2 + lam2 * s**3 * b) ** 2
        term1 = (
            3.0 * theta2 / 16.0 * s**2 * b
            - lam2 / 2.0 * s**3
            - gamma2 / 4.0 * s**3 * b
        )
        return 8.0 * (term0_sq + term1**2) + 3.0 * s**4 / (
            4.0 * (1.0 - s**2 + q * s**2)
        )
    g3 = (2.0 * s - 1.0) ** 3
    radicand = (4.0 - 3.0 * q) ** 2 / 16.0 - g3**2 * (1.0 - q) ** 2
    k = (4.0 - 3.0 * q) / 4.0 + np.sqrt(radicand)
    lam3 = k**-0.5
    theta3 = lam3 / np.sqrt(radicand)
    gamma3 = lam3**3 / np.sqrt(radicand)
    term1 = (
        3.0 * theta3 / 16.0 * g3 * (1.0 - q)
        - lam3 / 2.0 * g3
        - gamma3 / 4.0 * g3**3 * (1.0 - q) ** 2
    )
    term0_sq = (
        1.0
        / (16.0 * radicand)
        * (-3.0 * np.sqrt(k) / 4.0 + g3**2 * (1.0 - q) / np.sqrt(k)) ** 2
    )
    return 8.0 * (term1**2 + 3.0 / (32.0 * q) + term0_sq)


def depolarizing_qfi_gap(q: float, p: float) -> float:
    """Expected deficit pipeline - closed form in the depolarizing Fisher information.

    The reference expression's diagonal-block term reads
    3 S^4 / (16 (1 - S^2 + q S^2)) where the pipeline and oracles give
    3 S^4 / (4 (1 - S^2 + q S^2)) — a factor-4 deficit, i.e. a gap of
    (9/16) S^4 / (1 - S^2 + q S^2).
    """
    s = _check_point(q, p).survival
    return (9.0 / 16.0) * s**4 / (1.0 - s**2 + q * s**2)


class Verdict(enum.Enum):
    AGREE = "agree"
    CLOSED_FORM_DEVIATES = "closed-form-deviates"
    SINGULAR = "singular"


@dataclass(frozen=True)
class MetricCheck:
    """One metric compared across the three routes at a grid point."""

    pipeline: float
    closed_form: float
    oracle: float
    verdict: Verdict

    @property
    def closed_form_delta(self) -> float:
        return abs(self.pipeline - self.closed_form)

    @property
    def oracle_delta(self) -> float:
        return abs(self.pipeline - self.oracle) / max(abs(self.oracle), 1.0)


@dataclass(frozen=True)
class CrosscheckReport:
    kind: ChannelKind
    q: float
    p: float
    qfi: MetricCheck
    skew: MetricCheck
    concurrence: MetricCheck


def _verdict(pipeline: float, closed_form: float) -> Verdict:
    if abs(pipeline - closed_form) <= CLOSED_FORM_TOL:
        return Verdict.AGREE
    return Verdict.CLOSED_FORM_DEVIATES


def crosscheck(
    kind: ChannelKind, q: float, p: float, config: OracleConfig = OracleConfig()
) -> CrosscheckReport:
    """Evaluate pipeline, reference closed form, and oracle at one grid point.

    Pipeline values ride the compact closed-form channel route; oracle values
    ride the dense Kraus route (eigen oracle for Fisher, square-root oracle
    for skew, and the same concurrence expression on the independently damped
    state).  A metric whose evaluation hits a singular-regime error is
    reported with NaNs and a SINGULAR verdict.
    """
    param = _check_point(q, p)
    family = ghz_family(kind, p)
    kraus_fam = _kraus_family(kind, p)

    rho = apply_kraus_dense(werner_ghz(q).to_dense(), kind, param)
    drho = apply_kraus_dense(
        XTangent(_TANGENT_DIAG, _TANGENT_ANTI).to_dense(), kind, param
    )

    def check(pipeline_fn, closed_fn, oracle_fn) -> MetricCheck:
        try:
            pipeline = pipeline_fn()
            closed = closed_fn()
            oracle_val = oracle_fn()
        except (XQMetroError, ZeroDivisionError, FloatingPointError):
            return MetricCheck(float("nan"), float("nan"), float("nan"), Verdict.SINGULAR)
        return MetricCheck(pipeline, closed, oracle_val, _verdict(pipeline, closed))

    qfi = check(
        lambda: qfi_total(family, q),
        lambda: closed_form_qfi(kind, q, p),
        lambda: qfi_eigen_oracle(rho, drho, config),
    )
    skew = check(
        lambda: skew_total(family, q),
        lambda: closed_form_skew(kind, q, p),
        lambda: skew_sqrt_oracle(kraus_fam, q, config),
    )
    concurrence = check(
        lambda: concurrence_ghz_class(family.state(q)),
        lambda: closed_form_concurrence(kind, q, p),
        lambda: concurrence_ghz_class(kraus_fam.state(q)),
    )
    return CrosscheckReport(kind, q, p, qfi, skew, concurrence)
