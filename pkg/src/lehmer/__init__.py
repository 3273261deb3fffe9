"""Mahler measures, Salem numbers, geodesic lengths and the Lehmer search.

The public API re-exported here covers every module; see the individual
modules for details.
"""

from .bounds import (
    BoundConstants,
    degree_volume_upper_bound,
    dobrowolski_lower_bound,
    field_degree_lower_bound,
    growth_table,
    nonarithmetic_volume_lower_bound,
    systole_volume_lower_bound,
    theorem1b_volume_lower_bound,
)
from .classify import Kind, PolynomialClass, classify, is_pisot, is_salem
from .errors import (
    CheckpointError,
    ConvergenceError,
    DomainError,
    LehmerError,
    ParseError,
    QuadratureError,
)
from .geodesic import (
    DisplacementResult,
    displacement_from_trace,
    displacement_from_u_polynomial,
    u_minpoly_from_trace_minpoly,
)
from .measure import MeasureResult, Method, graeffe_measure, jensen_measure, log_mahler, mahler_measure
from .polynomial import (
    IntPolynomial,
    TracePolynomial,
    graeffe_step,
    is_cyclotomic_product,
    is_self_reciprocal,
    multiply,
    parse,
    reciprocal_transform,
    strip_cyclotomic_factors,
    sturm_count,
    to_trace_polynomial,
)
from .roots import complex_roots
from .search import (
    SearchRecord,
    SearchSpec,
    checkpoint_resume,
    checkpoint_save,
    enumerate_family,
    merge_records,
    search_all_shards,
    search_min_measure,
)

LEHMER_POLYNOMIAL = parse("1,1,0,-1,-1,-1,-1,-1,0,1,1")

__version__ = "0.1.0"
