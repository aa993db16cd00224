"""Projective decomposition ``A = sigma * D_alpha W D_beta`` of real matrices.

W, the scale-invariant form of A, has unit root-mean-square in every row
and every column and keeps every relative ratio of A.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegenerateColumnError,
    DimensionError,
    DomainError,
    InfeasibleZeroLineError,
    ParseError,
    ProjDecompError,
    ShapeError,
)
from .matrix import Matrix, as_matrix, hadamard_power, rms, rms_cols, rms_rows, scale_cols, scale_rows, transpose  # noqa: E402
from .solver import (  # noqa: E402
    ConvergenceReport,
    Decomposition,
    Gauge,
    SolverConfig,
    Status,
    decompose,
    gauge_fix,
    precheck,
    reconstruct,
    residual,
    sinkhorn_oracle,
)
from .support import SupportClass, SupportDiagnosis, check_support  # noqa: E402
from .equivalence import (  # noqa: E402
    equivalent_up_to_scale,
    expected_scale,
    is_scale_invariant,
    relative_ratio_defect,
    verify_equivalence_axioms,
)
from .baselines import ZParams, double_z, log_z_transform, to_polar, z_transform  # noqa: E402
from .datagen import GridSpec, RadialGridSpec, mixed_sign_dataset, radial_grid_circles, rect_grid_circles  # noqa: E402
