"""m-graphs of finite abelian groups: the graph on H with edges a -- m*a.

Closed-form predictions for connectivity, degrees, diameter and
isomorphism type, each paired with a brute-force oracle.
"""

from .closed_form import (
    DegreeCensus,
    DiameterCase,
    DiameterPrediction,
    count_connected_variants,
    least_power_w,
    predict_connected,
    predict_degree,
    predict_degree_census,
    predict_diameter,
    predict_diameter_cyclic,
    predict_diameter_cyclic_corrected,
    predict_diameter_cyclic_qk,
    predict_diameter_product,
    predict_distance_to_zero,
)
from .errors import (
    HypothesisNotMetError,
    InvalidArgumentError,
    InvalidSpecError,
    IsomorphismConstructionError,
    MGraphError,
    OutOfDomainError,
    ResourceLimitError,
)
from .graph import (
    INFINITE,
    GraphReport,
    MGraph,
    analyze,
    bfs_distance,
    build_mgraph,
    diameter_bruteforce,
    export_dot,
)
from .groups import GroupElement, GroupSpec, invariant_factors, solve_scalar_equation
from .isomorphism import (
    VertexBijection,
    ahu_encode,
    build_product_graph,
    check_leaf_fixing_map,
    iso_map_cyclic,
    iso_map_product,
    repaired_iso_map_cyclic,
    repaired_iso_map_product,
    verify_graph_isomorphism,
)
from .realization import (
    Realization,
    check_notree_obstruction,
    construct_for_diameter,
    construct_tree1,
    construct_tree2,
    realize_tree,
)
from .trees import TreeSpec, parse_tree_text

__version__ = "0.1.0"
