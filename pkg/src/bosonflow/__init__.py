"""Exact normal ordering of boson words and the matrix calculus around it.

Everything is computed over the rationals: normal forms, generalized
Stirling triangles, triangular/Riordan matrices, and the one-parameter
substitution groups obtained by integrating polynomial vector fields.
"""

from .errors import (
    BosonflowError,
    ConventionMismatch,
    InsufficientOrder,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
)
from .scalar import Scalar, format_rational, parse_rational
from .parampoly import ParamPoly, generalized_binomial
from .series import Convention, TruncSeries
from .boxseries import BivarSeries, BoxSeries
from .boson import (
    ANNIHILATE,
    CREATE,
    BosonWord,
    NormalForm,
    StirlingMatrix,
    normalize,
    normalize_power,
    parse_word,
    stirling_matrix,
)
from .triangular import (
    TriMatrix,
    decompose,
    exp_series_in_parameter,
    mat_exp,
    mat_log,
    mat_power,
    mat_power_via_log,
    matrix_from_json,
    matrix_to_json,
    one_param_group_check,
)
from .riordan import (
    RiordanPair,
    bivariate_char_series,
    is_sheffer,
    pair_from_json,
    pair_to_json,
    recover_pair,
    riordan_compose,
    riordan_matrix,
)
from .flows import (
    HomogeneousOperator,
    characteristic_correspondence,
    conjugacy_exp,
    flow_group_law_holds,
    formal_flow,
    group_action,
    parse_field,
    parse_operator,
    substitution_factor_closed,
)

__all__ = [
    "ANNIHILATE",
    "BivarSeries",
    "BosonWord",
    "BosonflowError",
    "BoxSeries",
    "CREATE",
    "Convention",
    "ConventionMismatch",
    "HomogeneousOperator",
    "InsufficientOrder",
    "InternalConsistencyError",
    "NormalForm",
    "ParamPoly",
    "ParseError",
    "PreconditionError",
    "RiordanPair",
    "Scalar",
    "StirlingMatrix",
    "TriMatrix",
    "TruncSeries",
    "bivariate_char_series",
    "characteristic_correspondence",
    "conjugacy_exp",
    "decompose",
    "exp_series_in_parameter",
    "flow_group_law_holds",
    "format_rational",
    "formal_flow",
    "generalized_binomial",
    "group_action",
    "is_sheffer",
    "mat_exp",
    "mat_log",
    "mat_power",
    "mat_power_via_log",
    "matrix_from_json",
    "matrix_to_json",
    "normalize",
    "normalize_power",
    "one_param_group_check",
    "pair_from_json",
    "pair_to_json",
    "parse_field",
    "parse_operator",
    "parse_rational",
    "parse_word",
    "recover_pair",
    "riordan_compose",
    "riordan_matrix",
    "stirling_matrix",
    "substitution_factor_closed",
]
