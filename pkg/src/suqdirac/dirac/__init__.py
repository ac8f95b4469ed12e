"""The Dirac operator on the quantum 3-sphere and its spectrum."""

from .classical import (
    CLASSICAL,
    LimitSweep,
    classical_limit_sweep,
    classical_matrix,
    classical_problems,
    classical_spectrum,
    parse_grid,
)
from .operator import (
    ClosureError,
    DiracParams,
    LinearOp,
    OperatorMatrix,
    assemble,
    closed_form_matrix,
    closure_check,
    dirac_matrix,
    spinor_basis,
)
from .reduce import (
    LABELS,
    ReductionError,
    case_of,
    check_reduction,
    diagonal_eigenvalue,
    reduce,
    reduce_generic,
    reduce_highest,
    reduce_lowest,
)
from .spectrum import (
    NumericRecord,
    SpectrumRecord,
    exact_eigenvector,
    lambda_pm_squared,
    module_spectrum,
    numeric_matrix,
    spectrum_closed_form,
    spectrum_numeric,
    verify_closed_form,
)

__all__ = [
    "CLASSICAL",
    "LABELS",
    "ClosureError",
    "DiracParams",
    "LimitSweep",
    "LinearOp",
    "NumericRecord",
    "OperatorMatrix",
    "ReductionError",
    "SpectrumRecord",
    "assemble",
    "case_of",
    "check_reduction",
    "classical_limit_sweep",
    "classical_matrix",
    "classical_problems",
    "classical_spectrum",
    "closed_form_matrix",
    "closure_check",
    "diagonal_eigenvalue",
    "dirac_matrix",
    "exact_eigenvector",
    "lambda_pm_squared",
    "module_spectrum",
    "numeric_matrix",
    "parse_grid",
    "reduce",
    "reduce_generic",
    "reduce_highest",
    "reduce_lowest",
    "spectrum_closed_form",
    "spectrum_numeric",
    "spinor_basis",
    "verify_closed_form",
]
