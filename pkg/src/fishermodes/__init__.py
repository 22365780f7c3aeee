"""Separable wave-function modes checked against Fisher-metric constraints.

Subpackage map:

* ``specfun``    -- spherical Bessel, associated Legendre, generalized
                    Laguerre, spherical harmonics (pinned conventions);
* ``geometry``   -- spherical Minkowski / Schwarzschild diagonal metrics;
* ``quadrature`` -- deterministic Gauss-Legendre quadrature on the ball;
* ``modes``      -- the free (Bessel) and localized (Laguerre) families;
* ``schwarzschild`` -- numerical solution of the Schwarzschild radial ODE;
* ``fisher``     -- Fisher-matrix quadratures, constraint checks,
                    statistical distance;
* ``hydrogen``   -- hydrogenic states and their Fisher integrals;
* ``cli``        -- the ``fishermodes`` command-line tool.
"""

from .errors import (
    BlowUpError,
    CoordinateSingularityError,
    EvanescentModeError,
    FisherModesError,
    HorizonDomainError,
    NearHorizonError,
    NonFiniteSampleError,
    NormalizationError,
    QuadratureConvergenceError,
    UnsupportedIndexError,
)
from .geometry import (
    CoordPoint,
    MetricKind,
    MetricSpec,
    gradient_weights,
    local_energy_sq,
    metric_diag,
    volume_weight,
)
from .quadrature import ConvergedResult, Domain, converged_integrate, integrate
from .specfun import (
    AngularIndex,
    assoc_legendre,
    generalized_laguerre,
    spherical_bessel_j,
    spherical_bessel_j_derivs,
    spherical_bessel_zero,
    spherical_harmonic,
)
from .modes import (
    LocalizationConstraint,
    ModeFunction,
    ModeSpec,
    expectation,
    free_mode_wavenumber,
    kg_alpha_sq,
    localized_alpha_sq,
    make_free_mode,
    make_localized_mode,
    mode_from_record,
    mode_record,
    multiplier_fields,
    pde_residual,
)
from .fisher import (
    ConstraintResult,
    FisherReport,
    constraint_check,
    fisher_matrix,
    statistical_distance,
)
from .hydrogen import (
    AppendixReport,
    HydrogenState,
    appendix_fisher_check,
    hydrogen_psi,
)
from .schwarzschild import (
    RadialProblem,
    RadialSolution,
    finite_difference_residual,
    flat_limit_deviation,
    near_horizon_start,
    ode_coefficients,
    solve_radial,
    wronskian,
)

__version__ = "0.1.0"
