"""Simplifying ideal triangulations with respect to a curve.

Curves are stored in normal coordinates on a fixed triangulation. Flips and
powers of Dehn twists bring a curve of any bit-size down to total weight at
most ``2 * zeta``.
"""

from .classify import ComponentReport, algebraic_intersection, analyse, decompose, is_peripheral, vertex_links
from .coords import (
    MultiCurve,
    add_scaled,
    flip_weights,
    format_curve,
    is_simple,
    parse_curve,
    subtract_scaled,
    total_intersection,
    validate_multicurve,
)
from .errors import (
    CapExceeded,
    EmptyEdge,
    InadmissibleResult,
    LemmaViolation,
    MultiCurveError,
    NotFlippable,
    NotSimple,
    NullHomotopic,
    ParityViolation,
    StandardizationFailed,
    TriangleInequalityViolation,
    TriangulationError,
    TwistFlipError,
)
from .oracle import oracle_flip_weight, oracle_realize
from .simplify import (
    ExtractMove,
    FlipMove,
    MoveLog,
    TheoremConstants,
    TwistLogMove,
    best_flip,
    certified_thresholds,
    replay,
    simplify_accelerated,
    simplify_flips_only,
    theorem_constants,
)
from .surface import (
    EdgeRef,
    SquareFrame,
    Triangulation,
    build_triangulation,
    flip_triangulation,
    format_triangulation,
    parse_triangulation,
    square_frame,
    vertex_orbits,
)
from .surfaces import SURFACES, example_surface, slope_weights
from .tracer import BlockPartition, Chain, CrossPoint, block_partition, chain, insulation, max_edge, next_point
from .twist import (
    DisjointComponent,
    TwistCurve,
    TwistMove,
    TwistStandardization,
    build_twist_curve,
    select_power,
    standardize,
    twist_power,
    unit_twist_step,
)

__version__ = "0.1.0"
