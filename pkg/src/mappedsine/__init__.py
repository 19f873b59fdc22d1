"""Spectral Galerkin solvers on the real line and in 3D space.

The infinite domain is mapped onto (0, pi) with ``y = pi/2 + arctan(x)`` and
functions are expanded in ``sin(m y)``.
"""

from .bench import BenchCase1D, ConvergenceRecord, run_convergence_1d, run_table_3d
from .estimator import HartreeSolver3D, ScreenedPoisson1D
from .exceptions import (
    DomainEndpointError,
    EvaluationError,
    InvalidInputError,
    SingularSystemError,
)
from .hartree import build_overlap_matrix, hartree_energy
from .mapping import (
    MapPoint,
    MetricTerms,
    eval_expansion,
    eval_expansion_physical,
    metric_terms,
    to_computational,
    to_physical,
)
from .operators import (
    OperatorSpec,
    assemble_general_1d,
    assemble_helmholtz_1d,
    assemble_poisson_1d,
    poisson_parts,
)
from .projection import (
    QuadratureRule,
    build_quadrature,
    composite_quadrature,
    moments_to_coefficients,
    parity_restrict,
    project_1d,
    project_3d_separable,
)
from .report import emit_report
from .solvers import SolveReport, kronecker_apply, solve_1d, solve_3d

__version__ = "0.1.0"
