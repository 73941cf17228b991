"""Clifford (geometric) algebra kernel for Cl(p,q) with exact rational
and float scalars: conjugation operators, characteristic polynomial /
determinant / adjugate / inverse, and basis-free Sylvester solvers."""

from .algebra import (
    FLOAT64,
    RATIONAL,
    Multivector,
    Signature,
    blade_product,
    center_project,
    conjugate,
    grade_project,
    natural,
    scalar_via_conjugations,
    sharp,
)
from .charpoly import (
    CharPolyData,
    GeneralizedCoeffs,
    adjugate,
    char_poly,
    closed_form_det,
    determinant,
    generalized_coeffs,
    inverse,
)
from .errors import (
    GasylvError,
    InternalError,
    NumericalDegradationError,
    ParseError,
    ResidualCheckFailedError,
    RingMismatchError,
    SignatureMismatchError,
    SingularElementError,
    SingularProblemError,
)
from .serialize import (
    dump_coeff_lines,
    format_multivector,
    load_coeff_lines,
    parse_multivector,
)
from .sylvester import (
    METHODS,
    SylvesterProblem,
    SylvesterSolution,
    build_D_general,
    build_F_general,
    reduce_two_term,
    solve,
    solve_closed,
    solve_general,
    solve_general_odd,
    verify_residual,
)

__version__ = "0.1.0"

__all__ = [
    "FLOAT64",
    "RATIONAL",
    "Multivector",
    "Signature",
    "blade_product",
    "center_project",
    "conjugate",
    "grade_project",
    "natural",
    "scalar_via_conjugations",
    "sharp",
    "CharPolyData",
    "GeneralizedCoeffs",
    "adjugate",
    "char_poly",
    "closed_form_det",
    "determinant",
    "generalized_coeffs",
    "inverse",
    "GasylvError",
    "InternalError",
    "NumericalDegradationError",
    "ParseError",
    "ResidualCheckFailedError",
    "RingMismatchError",
    "SignatureMismatchError",
    "SingularElementError",
    "SingularProblemError",
    "dump_coeff_lines",
    "format_multivector",
    "load_coeff_lines",
    "parse_multivector",
    "METHODS",
    "SylvesterProblem",
    "SylvesterSolution",
    "build_D_general",
    "build_F_general",
    "reduce_two_term",
    "solve",
    "solve_closed",
    "solve_general",
    "solve_general_odd",
    "verify_residual",
]
