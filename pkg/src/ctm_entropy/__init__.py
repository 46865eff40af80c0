"""Exact corner-transfer-matrix entanglement entropy of spin kappa/2 XXZ-type chains."""

from .character import (
    BlockFactor,
    ModelPoint,
    SpectrumTable,
    block_decomposition,
    ctm_spectrum,
    partition_blocks,
    partition_theta,
    t_block,
)
from .entropy import (
    EntropyResult,
    block_entropy_asymptotic,
    block_entropy_direct,
    block_entropy_poisson,
    entropy,
    entropy_asymptotic,
    entropy_from_spectrum,
    f_hat,
    f_kernel,
)
from .errors import (
    DomainError,
    IllConditionedError,
    NegativeEntropyError,
    SeriesError,
    TailTooHeavyError,
    TruncationError,
)
from .qseries import Nome, Truncation, log_qpochhammer, qpochhammer, qproduct_series, theta
from .scaling import (
    BoundaryEntropy,
    ScalingFit,
    boundary_g,
    central_charge,
    correlation_length,
    extract_boundary_entropy,
    fit_scaling,
    residual_constant,
)

__version__ = "0.1.0"
