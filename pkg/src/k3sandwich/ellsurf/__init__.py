"""Elliptic K3 surfaces over Q(t): models, Kodaira fibres, heights and NS lattices."""

from .model import (
    CHI,
    ZERO,
    SectionPoint,
    WeierstrassModel,
    from_cubic,
    from_cubic_point,
    j_invariant,
    point,
    point_add,
    point_double,
    point_mul,
    point_neg,
)
from .fibers import (
    KodairaFiber,
    classify_at,
    euler_number,
    fiber_table,
    kodaira_classify,
    tate_local,
    trivial_lattice,
)
from .heights import (
    NSModel,
    SectionSpec,
    component_index,
    component_indices,
    fiber_from_symbol,
    height,
    height_pairing,
    height_report,
    intersection_with_zero,
    ns_disc,
    ns_gram,
    section_specs,
)
