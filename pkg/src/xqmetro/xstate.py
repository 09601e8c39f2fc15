"""Three-qubit X states: compact storage, blocks, correlation tensor, Bloch form.

Conventions, fixed here once and tested:

* Basis order is |000>, |001>, ..., |111> (qubit 1 = leftmost bit).
* An X state is nonzero only on the main diagonal and the anti-diagonal.
  The four anti-diagonal coherences are stored as the upper entries
  ``anti[k] = rho[i, j]`` for the index pairs (0,7), (1,6), (2,5), (3,4).
* The state splits into four 2x2 blocks spanned by {|000>,|111>},
  {|001>,|110>}, {|010>,|101>}, {|011>,|100>}.
* Each block carries Bloch coordinates ``w = (w0, w1, w2, w3)`` defined by
  ``block = (w0*I + w1*sx + w2*sy + w3*sz) / 2`` in the block basis, i.e.
  ``w_a = Tr(block @ sigma_a)``.  Consequently ``w1 - i*w2`` equals twice the
  stored coherence and ``w0`` is the block's trace weight.
* The correlation tensor is ``T[a, b, c] = Tr(rho @ s_a x s_b x s_c)`` with
  ``s_0 = I``; an X state populates at most 16 of the 64 slots in the two
  diagonal sectors and 8 transverse slots, and the linear map between those
  slots and the block Bloch coordinates is derived programmatically below
  from the trace definition (coefficients are exactly +-1/4).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BlockNotPSDError, NotXFormError, TraceViolationError

DIAG_TOL = 1e-12
PATTERN_TOL = 1e-10

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

BLOCK_PAIRS = ((0, 7), (1, 6), (2, 5), (3, 4))

# All 64 triple Kronecker products s_a x s_b x s_c, flattened index a*16+b*4+c.
PAULI_TRIPLES = np.stack(
    [
        np.kron(np.kron(PAULI[a], PAULI[b]), PAULI[c])
        for a in range(4)
        for b in range(4)
        for c in range(4)
    ]
)
PAULI_TRIPLES.setflags(write=False)

# Tensor slots that an X state can populate, grouped by sector.
Z_EVEN_PATTERNS = ((0, 0, 0), (0, 3, 3), (3, 0, 3), (3, 3, 0))
Z_ODD_PATTERNS = ((0, 0, 3), (0, 3, 0), (3, 0, 0), (3, 3, 3))
X_EVEN_PATTERNS = ((1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1))
X_ODD_PATTERNS = ((1, 1, 2), (1, 2, 1), (2, 1, 1), (2, 2, 2))


def _block_generator(block: int, axis: int) -> np.ndarray:
    """8x8 embedding of sigma_axis into the given block, zero elsewhere."""
    i, j = BLOCK_PAIRS[block]
    out = np.zeros((8, 8), dtype=complex)
    s = PAULI[axis]
    out[i, i] = s[0, 0]
    out[i, j] = s[0, 1]
    out[j, i] = s[1, 0]
    out[j, j] = s[1, 1]
    return out


def _sector_matrix(axis: int, patterns) -> np.ndarray:
    """Sign matrix M with w[:, axis] = (1/4) M @ t[patterns].

    Derived from w_a^j = Tr(rho @ eta_a^j) with rho = (1/8) sum T s x s x s;
    the entries come out exactly +-1.
    """
    m = np.zeros((4, 4))
    for j in range(4):
        eta = _block_generator(j, axis)
        for k, (a, b, c) in enumerate(patterns):
            coeff = np.trace(PAULI_TRIPLES[a * 16 + b * 4 + c] @ eta) / 2.0
            m[j, k] = round(coeff.real)
    return m


M_EVEN = _sector_matrix(0, Z_EVEN_PATTERNS)
M_ODD = _sector_matrix(3, Z_ODD_PATTERNS)
M_TRANSVERSE_EVEN = _sector_matrix(1, X_EVEN_PATTERNS)
M_TRANSVERSE_ODD = _sector_matrix(2, X_ODD_PATTERNS)
for _m in (M_EVEN, M_ODD, M_TRANSVERSE_EVEN, M_TRANSVERSE_ODD):
    _m.setflags(write=False)


@dataclass(frozen=True)
class XState:
    """Validated three-qubit X state in compact form.

    Attributes
    ----------
    diag : ndarray, shape (8,)
        Real populations in basis order.
    anti : ndarray, shape (4,)
        Complex upper anti-diagonal entries, one per block pair.
    """

    diag: np.ndarray
    anti: np.ndarray

    def __post_init__(self):
        diag = np.array(self.diag, dtype=float)
        anti = np.array(self.anti, dtype=complex)
        if diag.shape != (8,) or anti.shape != (4,):
            raise NotXFormError("expected 8 populations and 4 coherences")
        if abs(diag.sum() - 1.0) > DIAG_TOL:
            raise TraceViolationError(f"trace {diag.sum()!r} differs from 1 beyond 1e-12")
        if diag.min() < -DIAG_TOL:
            raise BlockNotPSDError(f"negative population {diag.min():.3e}")
        for k, (i, j) in enumerate(BLOCK_PAIRS):
            if diag[i] * diag[j] - abs(anti[k]) ** 2 < -DIAG_TOL:
                raise BlockNotPSDError(
                    f"block {k}: |coherence|^2 exceeds population product"
                )
        diag.setflags(write=False)
        anti.setflags(write=False)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "anti", anti)

    def to_dense(self) -> np.ndarray:
        """Dense 8x8 complex density matrix."""
        return dense_from_compact(self.diag, self.anti)


class XTangent(NamedTuple):
    """Derivative of an X-state family: same layout as XState, no constraints."""

    diag: np.ndarray
    anti: np.ndarray

    def to_dense(self) -> np.ndarray:
        return dense_from_compact(self.diag, self.anti)

    def to_bloch_array(self) -> np.ndarray:
        return bloch_from_compact(self.diag, self.anti)


def dense_from_compact(diag: np.ndarray, anti: np.ndarray) -> np.ndarray:
    """Assemble the dense 8x8 matrix from compact X components."""
    out = np.diag(np.asarray(diag, dtype=complex))
    for k, (i, j) in enumerate(BLOCK_PAIRS):
        out[i, j] = anti[k]
        out[j, i] = np.conj(anti[k])
    return out


def bloch_from_compact(diag: np.ndarray, anti: np.ndarray) -> np.ndarray:
    """Block Bloch coordinates, shape (4, 4), from compact X components."""
    w = np.empty((4, 4))
    for k, (i, j) in enumerate(BLOCK_PAIRS):
        w[k, 0] = diag[i] + diag[j]
        w[k, 1] = 2.0 * np.real(anti[k])
        w[k, 2] = -2.0 * np.imag(anti[k])
        w[k, 3] = diag[i] - diag[j]
    return w


def compact_from_bloch(w: np.ndarray):
    """Inverse of :func:`bloch_from_compact`; returns ``(diag, anti)`` arrays."""
    diag = np.empty(8)
    anti = np.empty(4, dtype=complex)
    for k, (i, j) in enumerate(BLOCK_PAIRS):
        diag[i] = (w[k, 0] + w[k, 3]) / 2.0
        diag[j] = (w[k, 0] - w[k, 3]) / 2.0
        anti[k] = (w[k, 1] - 1j * w[k, 2]) / 2.0
    return diag, anti


def xstate_from_dense(matrix: np.ndarray) -> XState:
    """Validate a dense matrix as an X state and return its compact form.

    Raises
    ------
    NotXFormError
        If any entry outside the X pattern exceeds 1e-10 in magnitude, or the
        pattern entries are not Hermitian-consistent at that tolerance.
    TraceViolationError, BlockNotPSDError
        If the compact form violates the state invariants.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (8, 8):
        raise NotXFormError(f"expected an 8x8 matrix, got shape {m.shape}")
    mask = np.zeros((8, 8), dtype=bool)
    for i in range(8):
        mask[i, i] = True
        mask[i, 7 - i] = True
    worst = np.max(np.abs(m[~mask])) if np.any(~mask) else 0.0
    if worst > PATTERN_TOL:
        raise NotXFormError(f"off-pattern entry of magnitude {worst:.3e}")
    if np.max(np.abs(np.diag(m).imag)) > PATTERN_TOL:
        raise NotXFormError("diagonal has imaginary part beyond 1e-10")
    diag = np.diag(m).real.copy()
    anti = np.empty(4, dtype=complex)
    for k, (i, j) in enumerate(BLOCK_PAIRS):
        if abs(m[i, j] - np.conj(m[j, i])) > PATTERN_TOL:
            raise NotXFormError(f"block {k}: coherence pair is not conjugate")
        anti[k] = (m[i, j] + np.conj(m[j, i])) / 2.0
    return XState(diag, anti)


def correlation_tensor(state: XState) -> np.ndarray:
    """Correlation tensor ``T[a,b,c] = Tr(rho s_a x s_b x s_c)``, shape (4,4,4)."""
    rho = state.to_dense()
    flat = np.real(np.einsum("ij,xji->x", rho, PAULI_TRIPLES))
    return flat.reshape(4, 4, 4)


def block_decompose(state: XState) -> np.ndarray:
    """The four 2x2 blocks, shape (4, 2, 2), in the block-pair bases."""
    out = np.zeros((4, 2, 2), dtype=complex)
    for k, (i, j) in enumerate(BLOCK_PAIRS):
        out[k, 0, 0] = state.diag[i]
        out[k, 1, 1] = state.diag[j]
        out[k, 0, 1] = state.anti[k]
        out[k, 1, 0] = np.conj(state.anti[k])
    return out


def _gather(t: np.ndarray, patterns) -> np.ndarray:
    return np.array([t[p] for p in patterns])


def bloch_from_tensor(t: np.ndarray) -> "BlockBloch":
    """Block Bloch coordinates from a correlation tensor.

    Each coordinate is an exact +-1/4 combination of four tensor slots; the
    sign matrices are derived at import time from the trace definition.
    """
    t = np.asarray(t, dtype=float)
    if t.shape != (4, 4, 4):
        raise ValueError(f"expected tensor of shape (4, 4, 4), got {t.shape}")
    w = np.empty((4, 4))
    w[:, 0] = 0.25 * (M_EVEN @ _gather(t, Z_EVEN_PATTERNS))
    w[:, 3] = 0.25 * (M_ODD @ _gather(t, Z_ODD_PATTERNS))
    w[:, 1] = 0.25 * (M_TRANSVERSE_EVEN @ _gather(t, X_EVEN_PATTERNS))
    w[:, 2] = 0.25 * (M_TRANSVERSE_ODD @ _gather(t, X_ODD_PATTERNS))
    return BlockBloch(w)


def tensor_from_bloch_array(w: np.ndarray) -> np.ndarray:
    """X-supported correlation tensor from raw Bloch coordinates (4, 4).

    Inverse of the linear map in :func:`bloch_from_tensor`; the sign matrices
    satisfy ``M @ M.T = 4 I`` so the inverse of ``(1/4) M`` is ``M.T``.
    """
    t = np.zeros((4, 4, 4))
    for patterns, m, col in (
        (Z_EVEN_PATTERNS, M_EVEN, 0),
        (Z_ODD_PATTERNS, M_ODD, 3),
        (X_EVEN_PATTERNS, M_TRANSVERSE_EVEN, 1),
        (X_ODD_PATTERNS, M_TRANSVERSE_ODD, 2),
    ):
        vals = m.T @ w[:, col]
        for k, p in enumerate(patterns):
            t[p] = vals[k]
    return t


@dataclass(frozen=True)
class BlockBloch:
    """Validated block Bloch coordinates of an X state.

    ``w[j]`` is the 4-vector (w0, w1, w2, w3) of block j; the trace weights
    sum to one and every block satisfies ``w0 >= |(w1, w2, w3)|`` up to
    tolerance.
    """

    w: np.ndarray

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        if w.shape != (4, 4):
            raise BlockNotPSDError(f"expected coordinates of shape (4, 4), got {w.shape}")
        if abs(w[:, 0].sum() - 1.0) > DIAG_TOL:
            raise TraceViolationError(
                f"block weights sum to {w[:, 0].sum()!r}, expected 1"
            )
        for j in range(4):
            if w[j, 0] < -DIAG_TOL:
                raise BlockNotPSDError(f"block {j}: negative weight {w[j, 0]:.3e}")
            if w[j, 0] ** 2 - np.sum(w[j, 1:] ** 2) < -DIAG_TOL:
                raise BlockNotPSDError(f"block {j}: Bloch vector longer than weight")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)


def bloch_from_xstate(state: XState) -> BlockBloch:
    """Block Bloch coordinates of a state (direct block arithmetic)."""
    return BlockBloch(bloch_from_compact(state.diag, state.anti))


def xstate_from_bloch(bloch: BlockBloch) -> XState:
    """Rebuild the compact X state from validated block Bloch coordinates."""
    diag, anti = compact_from_bloch(bloch.w)
    return XState(diag, anti)


def random_xstate(rng: np.random.Generator) -> XState:
    """Random X state: flat-simplex populations, coherences within the PSD disc.

    Populations are a flat Dirichlet draw; each coherence is ``r e^{i theta}``
    with ``r`` uniform on [0, sqrt(rho_ii rho_jj)] and ``theta`` uniform on
    [0, 2 pi).
    """
    diag = rng.dirichlet(np.ones(8))
    anti = np.empty(4, dtype=complex)
    for k, (i, j) in enumerate(BLOCK_PAIRS):
        bound = np.sqrt(diag[i] * diag[j])
        r = rng.uniform(0.0, bound)
        theta = rng.uniform(0.0, 2.0 * np.pi)
        anti[k] = r * np.exp(1j * theta)
    return XState(diag, anti)
