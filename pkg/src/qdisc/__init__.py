"""Exact star product on the quantum disc and its operator-representation check."""

from .fock import (
    BandMatrix,
    InconsistentBand,
    TruncationError,
    WeightedBasis,
    berezin_transform,
    covariant_symbol,
    operator_of,
    operator_of_word,
    oracle_star,
    shift_operators,
    verify_relation3,
)
from .qforms import OneForm, TwoForm, d_on_oneform, differential, partial
from .qpoly import (
    Z,
    ZSTAR,
    AntiNormalPolynomial,
    NormalPolynomial,
    ParseError,
    anti_to_normal,
    format_poly,
    involution,
    multiply,
    normal_order_word,
    parse,
    parse_normal,
)
from .scalars import NotInvertible, QContext, TSeries, q_pochhammer, series_inv
from .star import (
    DEFAULT_CONVENTION,
    Convention,
    TensorPoly,
    box_tilde,
    c_term,
    p_j_apply,
    star as star_product,
    verify_associativity,
)

__version__ = "0.1.0"
