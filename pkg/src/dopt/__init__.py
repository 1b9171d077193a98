"""D-optimal difference families over cyclic groups.

Parameter-set algebra, orbit arithmetic in Z_v, difference-family checks,
circulant/block matrix construction with exact determinants, orbit-based
backtracking search, and a catalog of known designs.
"""

from dopt.params import (
    BoundValue,
    ParameterSet,
    XYPair,
    alpha_bound,
    enumerate_ps,
    ps_from_xy,
    ps_list_for_v,
    series_lambda_eq_s,
    series_r_eq_s,
    two_square_representations,
    xy_from_ps,
)
from dopt.modring import (
    Orbit,
    UnitSubgroup,
    expand_union,
    orbit_of,
    orbit_partition,
    subgroup_from_elements,
    subgroup_generated,
)
from dopt.family import (
    Block,
    DifferenceFamily,
    canonical_form,
    difference_counts,
    equivalent,
    find_multipliers,
    intersection_size,
    is_multiplier,
    verify_df,
)
from dopt.matrices import (
    assemble,
    certify_d_optimal,
    circulant_from_block,
    det_exact,
    gram_check,
    paf,
)

__version__ = "0.1.0"
