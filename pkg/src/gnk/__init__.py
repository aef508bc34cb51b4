"""Boundary integral equations with the generalized Neumann kernel.

Solves Riemann-Hilbert problems Re[A f+] = gamma, and the modified
Dirichlet problem (A = 1), on unbounded multiply connected planar regions.
The boundary integral equation of the second kind is discretized by the
Nystrom method with the trapezoidal rule on uniform periodic grids; the
structural theory behind the method (operator identities, null-space
dimensions, Mobius invariance of the kernels) is exposed as numerical
checks rather than assumed.
"""

from gnk.coefficient import (
    IndexReport,
    One,
    ShiftedPower,
    TrigCoefficient,
    coeff_jet,
    index_of,
    load_coefficient,
    predict_dimensions,
)
from gnk.dirichlet import (
    DirichletSolution,
    harmonic_eval,
    indicator_basis,
    solve_modified_dirichlet,
)
from gnk.discrete import (
    DiscreteOperators,
    apply_M,
    assemble_M,
    assemble_N,
    conjugate_periodic,
    nullity,
    operator_identity_residuals,
)
from gnk.errors import (
    CenterNotInHole,
    ConstancyViolation,
    DiagonalSingular,
    GnkError,
    InconsistentSystem,
    NonConvergent,
    OddGridSize,
    PointTooClose,
    TooCloseToBoundary,
    ZeroCoefficient,
)
from gnk.geometry import (
    Curve,
    ParamGrid,
    Region,
    circle,
    curve_jet,
    ellipse,
    load_region,
    perturbed_circle,
    validate_region,
    winding_of_point,
)
from gnk.kernels import BoundaryJet, kernel_M, kernel_M1, kernel_N
from gnk.mobius import (
    MappedBoundary,
    index_shift,
    kernel_invariance_check,
    map_region,
    mapped_index_of,
    transform_solution,
)
from gnk.rhp import (
    RHSolution,
    analyticity_residual,
    boundary_values,
    cauchy_eval,
    compute_h,
    load_boundary_data,
    plemelj_boundary,
    solve_ie,
    solve_rhp,
    verify_Sminus,
)

__all__ = [name for name in dir() if not name.startswith("_")]
