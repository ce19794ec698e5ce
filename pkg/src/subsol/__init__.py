"""Radially symmetric self-similar subsolutions of the 2D Euler equation.

Construction and validation of the velocity profile family, the derived
stress/pressure profiles, the energy dissipation budget with its optimal
growth rate, finite-difference verification of the governing identities,
and deterministic figure-data generation.  See the `cli` module (console
script `subsol`) for the command-line surface.
"""

from .energy import (
    EnergyReport,
    OnsagerClass,
    dissipation_ansatz_b0,
    dissipation_rate,
    dissipation_rate_optimal,
    energy_curve,
    energy_drop,
    energy_report,
    growth_rate,
    horizon_T,
    initial_energy_lower_bound,
    onsager_classify,
    point_vortex,
)
from .fields import (
    Cutoff,
    FieldSample,
    biot_savart_radial,
    cutoff_chi,
    eval_fields,
    lambda_max_traceless,
    polar_residual,
    self_similar_map,
    write_field_csv,
)
from .profiles import (
    AnsatzParams,
    AnsatzProfile,
    CombinationProfile,
    RadialProfile,
    TabulatedProfile,
    ansatz_a,
    make_ansatz_profile,
    profile_from_json,
    validate_alpha,
)
from .quadrature import (
    QuadResult,
    QuadratureError,
    integrate,
    moment_m1,
    moment_m2,
)
from .search import (
    BracketError,
    SweepResult,
    SweepRow,
    ansatz_A,
    ansatz_B,
    ansatz_c_opt,
    ansatz_f,
    ansatz_prefactor,
    concavity_interval,
    convex_combine,
    dissipation_functional,
    maximize_c,
    sweep_b,
)
from .series import FigureSeries
from .subsolution import (
    TOL_COND1,
    AdmissibilityReport,
    c_range_and_optimal,
    check_conditions,
    compute_A,
    compute_B,
    eval_Q,
    eval_W2,
    eval_qs,
    residual_ss,
)

__version__ = "0.1.0"
