"""Estimation metrics for one-parameter X-state families.

Quantum Fisher information and skew information decompose over the four
blocks; each block is handled in its Bloch coordinates ``w = (w0, w1, w2, w3)``
with the Minkowski-signature contractions

    gap(w, v)   = w0*v0 - w1*v1 - w2*v2 - w3*v3.

Mixed blocks (``gap(w, w) > 1e-10``) use closed forms; blocks at or beyond the
purity boundary are routed to a rank-aware 2x2 spectral evaluation (Fisher
information) or to the documented pure-limit stand-in ``4 Tr((d rho)^2)``
(skew information), so the closed forms are used strictly inside the mixed
regime.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import NotPureError, SingularBlockError
from .linalg import central_diff, eigh
from .xstate import (
    BLOCK_PAIRS,
    PAULI,
    XState,
    XTangent,
    bloch_from_compact,
)

MINKOWSKI_SIGNATURE = np.array([1.0, -1.0, -1.0, -1.0])
EPS_SINGULAR = 1e-10
RANK_CUTOFF = 1e-12
PURITY_TOL = 1e-10


def _gap(w: np.ndarray, v: np.ndarray) -> float:
    return float(w[0] * v[0] - w[1:] @ v[1:])


def qfi_block_mixed(w: np.ndarray, dw: np.ndarray) -> float:
    """Fisher information of a mixed 2x2 block.

    F = (dw0)^2/w0 + [ gap(w, dw)^2 / gap(w, w) - gap(dw, dw) ] / w0,
    valid for w0 > 0 and gap(w, w) > 0.
    """
    w = np.asarray(w, dtype=float)
    dw = np.asarray(dw, dtype=float)
    gap_ww = _gap(w, w)
    if w[0] <= EPS_SINGULAR or gap_ww <= EPS_SINGULAR:
        raise SingularBlockError(
            f"mixed-block form needs w0 > 0 and w0^2 > |w|^2, got gap {gap_ww:.3e}"
        )
    slope = _gap(w, dw)
    return float(dw[0] ** 2 / w[0] + (slope**2 / gap_ww - _gap(dw, dw)) / w[0])


class PureBlockQfi(NamedTuple):
    """Both readings of the pure-block Fisher information.

    ``quadratic_form`` is the derivative-free reference value w0^2 + |w|^2;
    ``sld_trace`` is Tr(d rho * L) with L = 2 d rho, i.e. sum_a (dw_a)^2.
    They are reported side by side (see the validation report) because they
    disagree in general; totals never use either — singular blocks in
    :func:`qfi_total` go through the rank-aware spectral route instead.
    """

    quadratic_form: float
    sld_trace: float


def qfi_block_pure(w: np.ndarray, dw: np.ndarray) -> PureBlockQfi:
    """Pure-block Fisher information readings; requires w0^2 = |w|^2 to 1e-10."""
    w = np.asarray(w, dtype=float)
    dw = np.asarray(dw, dtype=float)
    if abs(_gap(w, w)) > PURITY_TOL:
        raise NotPureError(f"block is not pure: w0^2 - |w|^2 = {_gap(w, w):.3e}")
    return PureBlockQfi(float(w @ w), float(dw @ dw))


def sld_block(w: np.ndarray, dw: np.ndarray) -> np.ndarray:
    """Symmetric logarithmic derivative of a mixed block, as a 2x2 matrix.

    L = p0 I + sum_i p_i sigma_i with
    p0 = gap(w, dw) / gap(w, w) and p_i = (dw_i - w_i p0) / w0; satisfies
    d rho = (rho L + L rho) / 2 and Tr(d rho L) = F.
    """
    w = np.asarray(w, dtype=float)
    dw = np.asarray(dw, dtype=float)
    gap_ww = _gap(w, w)
    if w[0] <= EPS_SINGULAR or gap_ww <= EPS_SINGULAR:
        raise SingularBlockError("SLD closed form needs a strictly mixed block")
    p0 = _gap(w, dw) / gap_ww
    coeffs = np.empty(4)
    coeffs[0] = p0
    coeffs[1:] = (dw[1:] - w[1:] * p0) / w[0]
    return np.einsum("a,aij->ij", coeffs, PAULI)


def block_matrix(w: np.ndarray) -> np.ndarray:
    """2x2 matrix of a block from its Bloch 4-vector."""
    return 0.5 * np.einsum("a,aij->ij", np.asarray(w, dtype=float), PAULI)


def _qfi_block_spectral(w: np.ndarray, dw: np.ndarray) -> float:
    """Rank-aware spectral Fisher information of one block.

    F = sum over eigenpairs with lam_i + lam_j > cutoff of
    2 |<i| d rho |j>|^2 / (lam_i + lam_j); exact on singular and pure blocks.
    """
    values, vectors = eigh(block_matrix(w))
    overlap = vectors.conj().T @ block_matrix(dw) @ vectors
    total = 0.0
    for i in range(2):
        for j in range(2):
            denom = values[i] + values[j]
            if denom > RANK_CUTOFF:
                total += 2.0 * abs(overlap[i, j]) ** 2 / denom
    return total


def skew_block(w: np.ndarray, dw: np.ndarray) -> float:
    """Skew information of a mixed block, 8[(d d0)^2 + sum_i (d d_i)^2].

    The square root of the block is d0 I + sum d_i sigma_i with
    d0 = sqrt(w0 + R)/2, d_i = w_i / (2 sqrt(w0 + R)), R = sqrt(w0^2 - |w|^2);
    the derivative coefficients below are the closed forms of d(d0), d(d_i).
    Normalisation: 4 Tr((d sqrt(rho))^2).
    """
    w = np.asarray(w, dtype=float)
    dw = np.asarray(dw, dtype=float)
    gap_ww = _gap(w, w)
    if w[0] <= EPS_SINGULAR or gap_ww <= EPS_SINGULAR:
        raise SingularBlockError(
            f"skew closed form needs a strictly mixed block, got gap {gap_ww:.3e}"
        )
    radial = np.sqrt(gap_ww)
    k = w[0] + radial
    sqrt_k = np.sqrt(k)
    dot = float(w[1:] @ dw[1:])
    dd0 = (sqrt_k * dw[0] - dot / sqrt_k) / (4.0 * radial)
    lam = 1.0 / sqrt_k
    sig = lam / radial
    gam = lam / (radial * k)
    ddi = -(sig / 4.0) * w[1:] * dw[0] + (lam / 2.0) * dw[1:] + (gam / 4.0) * w[1:] * dot
    return float(8.0 * (dd0**2 + ddi @ ddi))


def _skew_block_singular(dw: np.ndarray) -> float:
    """Pure/singular-limit stand-in: 4 Tr((d rho)^2) on the block = 2 sum dw^2."""
    dw = np.asarray(dw, dtype=float)
    return float(2.0 * dw @ dw)


@dataclass(frozen=True)
class ParamFamily:
    """One-parameter family of X states ``phi -> rho(phi)``.

    ``tangent`` supplies the analytic derivative as an :class:`XTangent`;
    when absent, derivatives fall back to symmetric differences of the
    compact components with step ``fd_step`` (default 1e-6 * max(1, |phi|)).
    """

    state: Callable[[float], XState]
    tangent: Callable[[float], XTangent] | None = None
    fd_step: float | None = None

    def tangent_at(self, phi: float) -> XTangent:
        if self.tangent is not None:
            return self.tangent(phi)
        diag = central_diff(lambda x: self.state(x).diag, phi, self.fd_step)
        anti = central_diff(lambda x: self.state(x).anti, phi, self.fd_step)
        return XTangent(diag, anti)

    def bloch_at(self, phi: float) -> np.ndarray:
        s = self.state(phi)
        return bloch_from_compact(s.diag, s.anti)


def _block_values(family: ParamFamily, phi: float):
    w = family.bloch_at(phi)
    dw = family.tangent_at(phi).to_bloch_array()
    return w, dw


def qfi_total(family: ParamFamily, phi: float) -> float:
    """Quantum Fisher information of the family at ``phi`` (sum over blocks)."""
    w, dw = _block_values(family, phi)
    total = 0.0
    for j in range(4):
        if w[j, 0] > EPS_SINGULAR and _gap(w[j], w[j]) > EPS_SINGULAR:
            total += qfi_block_mixed(w[j], dw[j])
        else:
            total += _qfi_block_spectral(w[j], dw[j])
    return total


def skew_total(family: ParamFamily, phi: float) -> float:
    """Skew information 4 Tr((d sqrt(rho))^2) of the family at ``phi``."""
    w, dw = _block_values(family, phi)
    total = 0.0
    for j in range(4):
        if w[j, 0] > EPS_SINGULAR and _gap(w[j], w[j]) > EPS_SINGULAR:
            total += skew_block(w[j], dw[j])
        else:
            total += _skew_block_singular(dw[j])
    return total


def concurrence_ghz_class(state: XState) -> float:
    """GHZ-class concurrence of an X state.

    C = 2 max(0, |rho_18| - sqrt(rho_22 rho_77) - sqrt(rho_33 rho_66)
                 - sqrt(rho_44 rho_55)).
    """
    d = state.diag
    penalty = sum(np.sqrt(d[i] * d[j]) for i, j in BLOCK_PAIRS[1:])
    return float(2.0 * max(0.0, abs(state.anti[0]) - penalty))


def random_family(rng: np.random.Generator) -> ParamFamily:
    """Seeded well-conditioned X-state family with an analytic tangent.

    Populations move along a floored simplex segment (floor 0.03 keeps every
    block bounded away from singularity), coherences keep a fixed fraction
    u in [0.1, 0.85] of the positivity bound while their phases rotate
    linearly; one of three motion modes (populations only, phases only, both)
    is drawn per family.  Used as the validation corpus for the oracle
    cross-checks.
    """
    d0 = 0.03 + 0.76 * rng.dirichlet(np.ones(8))
    d1 = 0.03 + 0.76 * rng.dirichlet(np.ones(8))
    fraction = rng.uniform(0.1, 0.85, size=4)
    theta = rng.uniform(0.0, 2.0 * np.pi, size=4)
    rate = rng.uniform(-2.0, 2.0, size=4)
    mode = int(rng.integers(0, 3))
    if mode == 0:
        d1 = d0.copy()
    elif mode == 1:
        rate = np.zeros(4)

    rows = np.array([pair[0] for pair in BLOCK_PAIRS])
    cols = np.array([pair[1] for pair in BLOCK_PAIRS])
    slope = d1 - d0

    def populations(phi: float) -> np.ndarray:
        return (1.0 - phi) * d0 + phi * d1

    def state(phi: float) -> XState:
        diag = populations(phi)
        radius = fraction * np.sqrt(diag[rows] * diag[cols])
        return XState(diag, radius * np.exp(1j * (theta + rate * phi)))

    def tangent(phi: float) -> XTangent:
        diag = populations(phi)
        prod = diag[rows] * diag[cols]
        dprod = slope[rows] * diag[cols] + diag[rows] * slope[cols]
        radius = fraction * np.sqrt(prod)
        dradius = fraction * dprod / (2.0 * np.sqrt(prod))
        phase = np.exp(1j * (theta + rate * phi))
        return XTangent(slope.astype(float), (dradius + 1j * rate * radius) * phase)

    return ParamFamily(state=state, tangent=tangent)
