"""Exact multiplicity of square matrix-polynomial paths.

The toolkit computes the generalized algebraic multiplicity of a path
L(lambda) at a center by four independent routes (determinant order, Schur
operator order, local partial multiplicities with a Jordan linearization,
and the intersection index of the linearized pencil against the
determinantal variety) and cross-certifies them, plus a floating-point
Lyapunov-Schmidt harness for the odd-multiplicity bifurcation verdict.
"""

from .errors import (
    CapExceededError,
    DegeneratePathError,
    InvariantViolationError,
    NewtonConvergenceError,
    ProblemFormatError,
    RegularityError,
)
from .scalars import (
    FIELDS,
    INFINITE,
    ExtendedNat,
    Field,
    GaussianRational,
    LocalExpansion,
    Poly,
    QQ,
    QQI,
    RationalFunction,
    laurent_expand,
    mult_via_gcd,
    ord_at,
    pole_order,
    poly_gcd,
    poly_lcm,
)
from .matrices import ConstMat, MatPoly, RatMat, TaylorCoefficients, direct_sum, mat_product
from .spectral import (
    Path,
    ProjectionPair,
    SpectrumReport,
    TransversalityReport,
    algebraic_order,
    block_split,
    check_direct_sum,
    check_product_formula,
    chi_via_det,
    generalized_spectrum,
    kernel_basis,
    projection_pair,
    range_basis,
    transversality,
    validate_projection_pair,
)
from .schur import (
    FactorizationWitness,
    LocalDeterminant,
    SchurOperator,
    chi_via_schur,
    factorization_witness,
    invertibility_via_localdet,
    local_determinant,
    schur_inverse_identity,
    schur_operator,
)
from .smith import (
    Linearization,
    LocalSmithForm,
    SmithForm,
    build_linearization,
    chi_via_smith,
    local_partial_multiplicities,
    local_smith_of_schur,
    smith_form,
)
from .geometry import (
    DetDifferentialReport,
    IntersectionIndexResult,
    TangentOrderReport,
    charpoly,
    chi_via_intersection,
    det_derivative,
    det_differential_sum,
    intersection_index_pencil,
    pencil_routes_agree,
    tangent_order,
)
from .bifurcation import (
    BifurcationVerdict,
    BranchSolution,
    LSConfig,
    MonomialTerm,
    NonlinearProblem,
    branch_probe,
    complement_derivative_check,
    nonlinear_eigenvalue_verdict,
    reduced_operator,
    solve_complement,
)
from .plant import (
    PlantedInstance,
    normalization_path,
    planted_path,
    random_jordan_pencil,
    random_planted_instance,
    random_rank_one_projection,
    random_unimodular,
)
from .cli import MultiplicityCertificate, build_certificate

__version__ = "0.1.0"
