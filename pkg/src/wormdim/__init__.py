"""wormdim: lattice random-walk and earthworm simulation with box-counting
dimension estimators.

Hot kernels run in a compiled extension when available and in a bit-identical
pure numpy fallback otherwise (or when WORMDIM_PURE_PYTHON=1 is set).
"""

from ._backend import COMPILED, backend_name
from ._rng import RandomSource, batch_seed, mix64
from .earthworm import (
    HoleSet,
    WormState,
    nearest_hole_along_ray,
    simulate_earthworm,
    worm_step,
)
from .errors import DegenerateInputError, DomainError
from .estimators import (
    AveragingProfile,
    DimensionEstimate,
    LogLogFit,
    averaging_dimension,
    ball_count,
    counting_dimension,
    fit_loglog,
)
from .frontier import FrontierResult, extract_frontier
from .geometry import (
    BoundingBox,
    ComponentCensus,
    LatticePoint,
    PointSet,
    connected_components,
    convex_hull,
    diameter,
    squared_diameter,
)
from .runner import (
    ExperimentConfig,
    GeometricSchedule,
    SimulationRecord,
    census_report,
    emit_plot_data,
    run_batch,
)
from .walks import WalkTrace, rescale_walk, simulate_walk

__version__ = "0.1.0"

__all__ = [
    "AveragingProfile",
    "BoundingBox",
    "COMPILED",
    "ComponentCensus",
    "DegenerateInputError",
    "DimensionEstimate",
    "DomainError",
    "ExperimentConfig",
    "FrontierResult",
    "GeometricSchedule",
    "HoleSet",
    "LatticePoint",
    "LogLogFit",
    "PointSet",
    "RandomSource",
    "SimulationRecord",
    "WalkTrace",
    "WormState",
    "averaging_dimension",
    "backend_name",
    "ball_count",
    "batch_seed",
    "census_report",
    "connected_components",
    "convex_hull",
    "counting_dimension",
    "diameter",
    "emit_plot_data",
    "extract_frontier",
    "fit_loglog",
    "mix64",
    "nearest_hole_along_ray",
    "rescale_walk",
    "run_batch",
    "simulate_earthworm",
    "simulate_walk",
    "squared_diameter",
    "worm_step",
]
