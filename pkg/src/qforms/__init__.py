"""qforms: exact q-deformed bilinear forms, small quantum groups at roots of
unity, and hyperplane-arrangement cochain complexes.

Everything is computed over explicit cyclotomic fields with rational
coordinates; no floating point is used anywhere.
"""

from .cyclotomic import CycField, CycNum, cyclotomic_poly
from .errors import (
    ContractViolation,
    CutoffError,
    DomainError,
    ParameterError,
    QformsError,
    UnsupportedOracleError,
)

__version__ = "0.1.0"

__all__ = [
    "CycField",
    "CycNum",
    "cyclotomic_poly",
    "QformsError",
    "ParameterError",
    "DomainError",
    "CutoffError",
    "UnsupportedOracleError",
    "ContractViolation",
    "__version__",
]
