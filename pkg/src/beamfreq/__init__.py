"""Exact frequency-domain transfer functions of a pinned beam carrying a
point mass-spring-damper, for the shear-deformable and slender beam models,
with built-in independent verification oracles."""

from .beam_model import (
    BeamParams, DerivedParams, ModelKind, OutputKind, derive_params, validate,
)
from .numeric import (
    BeamFreqError, DegenerateFrequency, EmptyRange, NearSingular, Overflow,
    RepeatedRoot, SingularDiscretization,
)
from .timoshenko import (
    BoundaryUnknowns, InterfaceSystem, TbAux, TbWavenumbers, ZKernel7,
    tb_coeffs, tb_expm, tb_interface_matrix, tb_solve_boundary, tb_transfer, tb_z,
)
from .euler_bernoulli import (
    EbInterfaceSystem, EbWavenumber, ZKernel4,
    eb_gamma, eb_expm, eb_interface_matrix, eb_transfer, eb_z,
)
from .response import (
    ModalPeak, SweepSpec, TransferSample, find_peaks, sweep, transfer,
)
from .verification import (
    ResidualReport, expm_series_oracle, fd_bvp_oracle, h2_consistency,
    residual_check,
)

__version__ = "0.1.0"

__all__ = [
    "BeamParams", "DerivedParams", "ModelKind", "OutputKind",
    "derive_params", "validate",
    "BeamFreqError", "DegenerateFrequency", "EmptyRange", "NearSingular",
    "Overflow", "RepeatedRoot", "SingularDiscretization",
    "TbWavenumbers", "ZKernel7", "TbAux", "InterfaceSystem", "BoundaryUnknowns",
    "tb_coeffs", "tb_z", "tb_expm", "tb_interface_matrix",
    "tb_solve_boundary", "tb_transfer",
    "EbWavenumber", "ZKernel4", "EbInterfaceSystem",
    "eb_gamma", "eb_z", "eb_expm", "eb_interface_matrix", "eb_transfer",
    "SweepSpec", "TransferSample", "ModalPeak", "sweep", "find_peaks", "transfer",
    "ResidualReport", "expm_series_oracle", "fd_bvp_oracle",
    "residual_check", "h2_consistency",
    "__version__",
]
