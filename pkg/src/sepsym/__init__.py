"""Symmetric separated set-systems over [n].

Separation predicates (strong, weak, chord, and the k-generalization),
exhaustive enumeration of inclusion-maximal symmetric collections to
verify the purity theorems at desk scale, and exact-rational geometric
certificates: zonogon tilings realizing maximal weakly separated
collections and cubillages of the 3-dimensional cyclic zonotope
realizing maximal chord separated ones.
"""

from .colorsets import (
    ColorSet,
    GroundSet,
    OrderRelations,
    PairProfile,
    classify_pairs,
    mirror_color,
    mirror_complement,
    order_predicates,
    set_shape,
)
from .separation import (
    SeparationRelation,
    is_chord_separated,
    is_k_separated,
    is_strongly_separated,
    is_weakly_separated,
    pairwise_separated,
)
from .collections import (
    DEFAULT_SCALE_LIMITS,
    Domain,
    OrbitGraph,
    PurityReport,
    SymCollection,
    band_closure,
    build_orbit_graph,
    chord_target,
    contract_odd,
    enumerate_maximal_symmetric,
    expand_odd,
    greedy_completion,
    greedy_symmetric_completion,
    level_profile,
    strong_weak_target,
    target_size,
    verify_purity,
)
from .combi import (
    FineQuasiCombi,
    FtqCombi,
    Tile,
    ZonogonConfig,
    combi_from_json,
    combi_to_json,
    embed,
    expand_combi_odd,
    export_svg,
    fan_triangulate,
    make_zonogon_config,
    merge_semilenses,
    reconstruct_ftq_combi,
    reflect_symmetrize,
    validate_ftq_combi,
)
from .cubillage import (
    Cube,
    Cubillage,
    Facet,
    Fragment,
    Fragmentation,
    HalfFacet,
    Membrane,
    Section,
    ZonotopeConfig,
    axis_endpoints,
    axis_rotation,
    boundary_sides,
    build_symmetric_cubillage,
    center_symmetry,
    check_membrane,
    contract_cubillage,
    cubillage_from_json,
    cubillage_to_json,
    embed3,
    expand_cubillage,
    extract_pie,
    fragmentation,
    is_symmetric_cubillage,
    lift_membrane,
    make_zonotope_config,
    membrane_from_json,
    membrane_to_combi,
    membrane_to_json,
    mirror_cube,
    mirror_facet,
    mirror_x,
    plate_membrane,
    project_config,
    project_point,
    reconstruct_from_spectrum,
    spectrum,
    symmetric_membrane_between,
    validate_cubillage,
    vertical_boundary_membranes,
)
from . import errors

__version__ = "0.1.0"
