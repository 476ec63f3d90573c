"""Exact polynomial division, Groebner bases, and stability diagnostics on graded modules."""

from .division import (
    BIVARIATE_STABLE,
    CLO_DEFAULT,
    DOMINANT_MIN_TERM,
    DivisionResult,
    DivisionStep,
    Strategy,
    divide,
    strategy_by_name,
)
from .errors import (
    AmbientMismatchError,
    CoefficientDomainError,
    FloatOverflowError,
    InternalConsistencyError,
    MembershipError,
    OrderSpecError,
    PolynomialSyntaxError,
    PreconditionError,
    SingularMatrixError,
    StableDivError,
    UnsupportedProductError,
    WindowTooSmallError,
    ZeroDivisorError,
    ZeroPolynomialError,
)
from .groebner import (
    GroebnerBasis,
    buchberger,
    hilbert_dimension,
    hilbert_series_values,
    is_groebner_basis,
    is_zero_dimensional,
    normal_form,
    s_polynomial,
    standard_monomials,
)
from .norms import h2_inner, h2_norm, h2_norm_sq, l1_norm, monomial_h2_norm_sq
from .ordering import (
    MonomialOrder,
    dominance_order,
    graded_lex,
    leading_term,
    parse_order_spec,
    pure_lex,
)
from .polyring import (
    Ambient,
    GaussianRational,
    MultiIndex,
    Polynomial,
    Term,
    degree,
    exponents_of_degree,
    format_polynomial,
    parse_polynomial,
)
from .shiftop import (
    adjoint_coupling_report,
    commutator_report,
    compression_identity_residual,
    derivative_blocks,
    embedding_blocks,
    linear_to_quadratic,
    module_frame,
    quadratic_ambient,
    quadratic_reduction_report,
    shift_blocks,
    verify_embedding,
    verify_reducing,
)
from .stability import (
    StabilityReport,
    StableDecomposition,
    bivariate_stable_divide,
    dominance_rescaling,
    dominance_rho,
    dominant_divide,
    equalize_degrees,
    min_cost_decomposition,
    monomial_module_decompose,
    orthonormal_linear_decompose,
    rescale_ideal,
    rescale_polynomial,
    stability_constant_scan,
)

__version__ = "0.1.0"
