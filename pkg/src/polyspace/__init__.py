"""Exact invariants of polygon spaces M_n(m): Betti numbers, the cohomology ring
presentation, top intersection numbers and Fano/ampleness tests."""

from .errors import (
    InvalidWeights,
    NonPositiveEntry,
    NotSmooth,
    ParseError,
    PolygonInequalityViolated,
    PolyspaceError,
    TooFewSides,
)
from .intersection import (
    CycleSum,
    Partition,
    SignVector,
    antidivisor_class,
    divisor_class,
    evaluate,
    evaluate_monomial_by_cycles,
    expand_d_epsilon,
    multiply_l_into_cycle,
    point_count,
    stability_of_partition,
    top_intersection,
)
from .poincare import IntPolynomial, betti_numbers, euler_characteristic, poincare_polynomial
from .positivity import (
    fano_verdict,
    first_chern_class,
    is_ample,
    is_fano_maximal,
    is_fano_quadrangle,
    maximal_degenerations,
    quadrangles,
)
from .ring import Monomial, RingElement, graded_dimension, multiply, presentation, relation_for_long_set
from .weights import (
    ChamberSignature,
    SubsetClass,
    SubsetMask,
    WeightVector,
    chamber_signature,
    classify_subset,
    is_smooth,
    long_subsets,
    massive_points,
    new_weight_vector,
)

__version__ = "0.1.0"
