"""Quantum metrology metrics for three-qubit X states under decoherence.

Computes quantum Fisher information, Wigner-Yanase skew information, and
GHZ-class concurrence for three-qubit X states evolving under phase-damping,
depolarizing, and phase-flip channels.  The core pipeline works in per-block
Bloch coordinates (four 2x2 blocks); every closed form is crosscheckable
against full-matrix brute-force oracles.
"""

from .channels import (
    ChannelKind,
    ChannelParam,
    apply_channel_compact,
    apply_kraus,
    apply_kraus_dense,
    bloch_damping_factors,
    damped_bloch,
    damped_bloch_array,
    kraus_operators,
)
from .errors import (
    BadParameterError,
    BadProbabilityError,
    BlockNotPSDError,
    NotHermitianError,
    NotPSDError,
    NotPureError,
    NotXFormError,
    SingularBlockError,
    TraceViolationError,
    XQMetroError,
)
from .ghz import (
    CrosscheckReport,
    MetricCheck,
    Verdict,
    closed_form_concurrence,
    closed_form_qfi,
    closed_form_skew,
    crosscheck,
    depolarizing_qfi_gap,
    ghz_family,
    werner_ghz,
)
from .linalg import central_diff, eigh, psd_sqrt
from .metrics import (
    ParamFamily,
    PureBlockQfi,
    concurrence_ghz_class,
    qfi_block_mixed,
    qfi_block_pure,
    qfi_total,
    random_family,
    skew_block,
    skew_total,
    sld_block,
)
from .oracle import OracleConfig, qfi_eigen_oracle, skew_sqrt_oracle
from .xstate import (
    BlockBloch,
    XState,
    XTangent,
    bloch_from_tensor,
    bloch_from_xstate,
    block_decompose,
    correlation_tensor,
    random_xstate,
    xstate_from_bloch,
    xstate_from_dense,
)

__version__ = "1.0.0"

__all__ = [
    "BadParameterError",
    "BadProbabilityError",
    "BlockBloch",
    "BlockNotPSDError",
    "ChannelKind",
    "ChannelParam",
    "CrosscheckReport",
    "MetricCheck",
    "NotHermitianError",
    "NotPSDError",
    "NotPureError",
    "NotXFormError",
    "OracleConfig",
    "ParamFamily",
    "PureBlockQfi",
    "SingularBlockError",
    "TraceViolationError",
    "Verdict",
    "XQMetroError",
    "XState",
    "XTangent",
    "apply_channel_compact",
    "apply_kraus",
    "apply_kraus_dense",
    "bloch_damping_factors",
    "bloch_from_tensor",
    "bloch_from_xstate",
    "block_decompose",
    "central_diff",
    "closed_form_concurrence",
    "closed_form_qfi",
    "closed_form_skew",
    "concurrence_ghz_class",
    "correlation_tensor",
    "crosscheck",
    "damped_bloch",
    "damped_bloch_array",
    "depolarizing_qfi_gap",
    "eigh",
    "ghz_family",
    "kraus_operators",
    "psd_sqrt",
    "qfi_block_mixed",
    "qfi_block_pure",
    "qfi_eigen_oracle",
    "qfi_total",
    "random_family",
    "random_xstate",
    "skew_block",
    "skew_sqrt_oracle",
    "skew_total",
    "sld_block",
    "werner_ghz",
    "xstate_from_bloch",
    "xstate_from_dense",
]
