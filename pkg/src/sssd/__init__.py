"""Explicit boundary-preserving split-step semi-discrete SDE schemes."""

from .core import (
    BrownianIncrements,
    PathEnsemble,
    TimeGrid,
    coarsen_increments,
    make_grid,
    sample_increments,
    sample_paths,
)
from .framework import (
    ComposedScheme,
    DomainError,
    StageFlow,
    StepSizeError,
    simulate_ensemble,
    simulate_path,
    step,
)
from .schemes import (
    LN_4_3,
    AitSahaliaParams,
    CirQuadParams,
    GenAitSahaliaParams,
    SolverError,
    SplitConfig,
    ValidationError,
    ait_sahalia_scheme,
    ait_sahalia_step,
    cir_quad_scheme,
    cir_quad_step,
    drift_implicit_step,
    euler_maruyama_step,
    gen_ait_sahalia_scheme,
    gen_ait_sahalia_step,
)

__version__ = "0.1.0"
