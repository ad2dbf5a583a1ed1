"""Exact syzygies, decompositions and rank conditions for polynomial matrices."""

__version__ = "0.1.0"

from .poly import GaussianRational, MonomialOrder, ParseError, Polynomial, PolynomialError, RingContext, format_poly, parse_poly
from .gb import ModuleElement, ModuleOrder, PolyMatrix, SubmoduleGB, buchberger, member, normal_form, syzygy_matrix
from .modules import colon_ideal, intersect_modules, module_equal, saturate, tf_closure
from .rank import (
    check_R_condition,
    evaluate_matrix,
    fitting_ideals,
    generic_rank,
    is_C_constant_rank,
    is_C_elliptic,
    pointwise_exactness,
    radical_membership,
    wave_cone_span,
)
from .decompose import classify_controllability, decompose
from .classify import classify
from .document import InputError, parse_document
from .corpus import FIXTURE_NAMES, load_fixture
