"""Quaternion Fourier transforms and quaternion linear canonical transforms."""

from .errors import (AxisError, DomainError, FormatError, GridError, ParamError,
                     QFourierError, ResampleError)
from .qft import (NormalizationMode, TransformKind, TransformPlan, beta_relation_check,
                  derivative_residual, dqft, dqft_direct, idqft, idqft_direct,
                  multiplication_check, poisson_energy, poisson_smooth, spectral_partial)
from .qlct import (LCTParams, QLCTConfig, QSignal1D, isqlct, irqlct, kernel_eval,
                   oned_transform, rqlct, rqlct_direct, rqlct_via_split, sqlct,
                   sqlct_direct, sqlct_fast)
from .quat import CANONICAL, AxisConfig, I, J, K, ONE, Quaternion
from .signal import (Grid2D, QSignal2D, alpha, beta, convolve, inner_product, lp_norm,
                     poisson_kernel, abel_weights, reflect_conj)

__version__ = "0.1.0"
