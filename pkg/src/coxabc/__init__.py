"""Exact computations on the Picard lattice of X_{a,b,c} = Bl_{b+c} (P^{c-1})^{a-1}."""

__version__ = "0.1.0"

from .lattice import (  # noqa: E402
    DivisorClass,
    LatticeError,
    NotMoriDreamError,
    Params,
    anticanonical,
    anticanonical_degree,
    classify_case,
    exceptional,
    format_divisor,
    hyperplane,
    is_mori_dream,
    mukai_pairing,
    parse_divisor,
)
from .roots import cartan_matrix, dynkin_type, reflect, simple_roots  # noqa: E402
from .weyl import classes_up_to_point_symmetry, is_minus_one, minus_one_divisors, orbit  # noqa: E402
