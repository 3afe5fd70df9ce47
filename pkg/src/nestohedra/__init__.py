"""Exact face enumeration for nestohedra of graphs.

The package computes face, h- and gamma-polynomials of nestohedra built
from graphical building sets, both by the facet-decomposition recursion and
from closed-form generating functions, and cross-checks the two routes
against each other.
"""

from .algebra import (
    GammaVector,
    InhomogeneousError,
    Poly2,
    Rational,
    format_rational,
    gamma_from_h,
    h_from_f,
    h_from_gamma,
    homogeneous_degree,
    is_symmetric,
    parse_rational,
)
from .buildingset import (
    BuildingSet,
    Graph,
    GraphSpecError,
    bipartite_graph,
    building_set_from_graph,
    building_set_from_key,
    building_set_lists,
    canonical_key,
    complete_graph,
    components,
    connected_graphs_upto_iso,
    contraction,
    dimension,
    empty_graph,
    graph_from_edges,
    graph_spec,
    induced_subgraph,
    is_connected_graph,
    is_valid,
    join_graphs,
    parse_graph_spec,
    path_graph,
    removal,
    restriction,
    star_graph,
    validate,
)
from .invariants import (
    GalPolyResult,
    ScanViolation,
    SeriesScanReport,
    dehn_sommerville,
    euler_relation_holds,
    fvector,
    gal_check_poly,
    gal_check_series,
    gamma,
    hpoly,
)
from .ringcalc import (
    FPolyCache,
    PolyExpr,
    boundary,
    boundary_expr,
    boundary_graph,
    fpoly,
    fpoly_expr,
    fpoly_graph,
    integrate_t,
    product_factors,
)
from .series import (
    DEFAULT_ORDER,
    FAMILIES,
    FamilySpec,
    IdentityReport,
    IdentityResult,
    NotInFamilyError,
    Series2,
    coeff_normalized,
    deriv,
    eta_linear,
    exp_series,
    family_f,
    family_h,
    first_mismatch,
    identity_suite,
    inv_series,
    pe_f_xplusy,
    phi_h,
    restrict_y0,
    subst_h_series,
    swap_xy,
    truncate,
)

__version__ = "0.1.0"
