"""Mean-field q-color model with power-z interaction: phase structure,
fuzzy-model Gibbsianness, collapsing schemes, and finite-volume validation."""

from .model import (
    ModelParams,
    U_MAX,
    aux_potential,
    aux_potential_argmin,
    beta_of_u,
    embed,
    free_energy,
    free_energy_1d,
    free_energy_1d_du,
    free_energy_1d_du2,
    hamiltonian,
    mf_exponent,
    mf_map,
    relative_entropy,
)
from .critical import (
    CriticalTemperatures,
    LandscapeProfile,
    LimitDescription,
    LimitKind,
    MfSolutionSet,
    StationaryKind,
    TransitionOrder,
    beta_c,
    beta_c_cached,
    beta_one,
    beta_zero,
    landscape,
    largest_solution,
    limit_distribution,
    mf_solutions,
    spinodal_lower,
    transition_order,
)
from .fuzzy import (
    DiscontinuityError,
    GibbsRegime,
    GibbsVerdict,
    class_weight,
    classify,
    governing_size,
    limit_kernel,
    limit_kernel_row,
    smallest_multiclass_size,
)
from .collapse import (
    CollapsingScheme,
    SchemeError,
    Status,
    Trajectory,
    gibbs_trajectory,
    is_regular,
    load_scheme,
    make_scheme,
    r_star_trajectory,
    validate_scheme,
)
from . import finitevol
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
