"""Intrinsic Hölder sections of quotient maps on finite metric spaces."""

from .errors import HolderError, InputError
from .holder import (
    check_holder,
    check_wrt,
    check_wrt_strong,
    cone_avoidance_check,
    cone_points,
    minimal_global_constant,
    minimal_holder_constant,
)
from .metric import (
    FiniteMetricSpace,
    HolderParams,
    QuotientStructure,
    Section,
    build_space,
    from_cloud,
    from_graph,
    from_table,
    make_quotient,
    make_section,
    validate_metric,
)

__all__ = [
    "FiniteMetricSpace",
    "HolderError",
    "HolderParams",
    "InputError",
    "QuotientStructure",
    "Section",
    "build_space",
    "check_holder",
    "check_wrt",
    "check_wrt_strong",
    "cone_avoidance_check",
    "cone_points",
    "from_cloud",
    "from_graph",
    "from_table",
    "make_quotient",
    "make_section",
    "minimal_global_constant",
    "minimal_holder_constant",
    "validate_metric",
]
