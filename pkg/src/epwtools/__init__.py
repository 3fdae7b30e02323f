"""Exact-arithmetic toolkit for Lagrangian degeneracy strata of the
third wedge power of a 6-space, the double cover of the rank-2
symmetric-matrix cone, and the integral-lattice computations behind the
divisor classification and K3 exclusion."""

from .exterior import (
    Chart,
    CertifiedEmpty,
    Inconclusive,
    Subspace,
    decomposable_free_certificate,
    decomposable_witness,
    default_chart,
    emptiness_certificate,
    graph_lagrangian,
    intersection_dim,
    is_lagrangian,
    lagrangian_through,
    plucker_quadrics,
    q_of_lagrangian,
    symplectic_pairing,
    tangent_lagrangian,
    wedge3,
)
from .strata import (
    StratumSample,
    cofactor_quadrics,
    corank,
    line_degree,
    phi_cofactor,
    psi,
    restriction_map,
    stratum_sample,
    tangent_map_check,
)
from .doublecover import (
    FlopGraph,
    RequiresExtension,
    fiber_g2,
    flop_graph,
    g2,
    graded_dims,
    hyperplane_pullback,
    incidence_member,
    jacobian_rank_g2,
    verify_coord_ring,
)
from .lattices import (
    E8,
    HeegnerEntry,
    IntegralLattice,
    beta_perp_gram_check,
    beta_search,
    build_h_perp,
    direct_sum,
    disc_class,
    disc_formula,
    discriminant_group,
    divisibility,
    divisor_image_labels,
    heegner_classify,
    hyperbolic_U,
    no_k3_certificate,
    orth_complement,
    rank1,
    rescale,
)

__version__ = "0.1.0"
