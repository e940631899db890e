"""Exact coset normal forms and Iwahori-chain orbit decompositions in the
affine flag variety of SL2."""

from .errors import (
    FlagOrbitsError,
    InsufficientPrecision,
    InvalidLabelForLevel,
    InvolutionUndefinedAtLevel,
    LiteralSyntaxError,
    NotAUnit,
    NotUnimodular,
    ZeroMatrix,
    ZeroPolynomial,
    ZeroRotation,
    ZeroTorusParameter,
)
from .flagpoint import (
    FlagPoint,
    act,
    involute,
    make_point,
    normal_form,
    primed,
    representative,
    rotate_point,
    straight,
)
from .laurent import Coeff, LaurentPoly, as_coeff
from .loopgroup import (
    GroupElement,
    SubgroupId,
    diag_t,
    dot_s1,
    identity,
    inverse,
    lower,
    membership,
    multiply,
    rotate_element,
    sample_subgroup,
    torus,
    upper,
)
from .orbits import (
    I4FineLabel,
    Level,
    OrbitLabel,
    classify,
    classify_fine_i4,
    dimension,
    distinguished_point,
    enumerate_labels,
    involution_label,
    is_point_orbit,
    label_is_valid,
    reduce_to_base,
    sample_point,
)
from .parsing import parse_coeff, parse_label, parse_matrix, parse_point, parse_poly
from .verify import CheckReport, run_all

__version__ = "0.1.0"
