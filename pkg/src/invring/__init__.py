"""Secondary and irreducible secondary invariants of finite matrix groups over Q."""

from .errors import (
    InvalidPrimariesError,
    InvringError,
    ParseError,
    ResourceError,
    ValidationError,
)
from .groebner import (
    TruncatedGroebnerBasis,
    buchberger,
    extend_truncated,
    member_up_to_degree,
    reduce,
    s_polynomial,
    truncated_gb,
)
from .group import MatrixGroup, act, is_invariant, reynolds, validate_primaries
from .molien import molien_profile, molien_series, secondary_counts
from .poly import Poly, Ring, parse_polynomial
from .secondary import (
    SecondaryResult,
    compute_secondaries,
    improved_new_algorithm,
    irreducible_only,
)

__version__ = "0.1.0"

__all__ = [
    "InvalidPrimariesError", "InvringError", "ParseError", "ResourceError", "ValidationError",
    "TruncatedGroebnerBasis", "buchberger", "extend_truncated", "member_up_to_degree",
    "reduce", "s_polynomial", "truncated_gb",
    "MatrixGroup", "act", "is_invariant", "reynolds", "validate_primaries",
    "molien_profile", "molien_series", "secondary_counts",
    "Poly", "Ring", "parse_polynomial",
    "SecondaryResult", "compute_secondaries", "improved_new_algorithm", "irreducible_only",
]
