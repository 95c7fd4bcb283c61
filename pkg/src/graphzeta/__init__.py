"""Spectral zeta functions, heat functions, regularized determinants and
Ihara zeta functions of finite graphs and integer lattices."""

from .determinant import (
    IntPolynomial,
    LaurentSeries,
    charpoly_cycle,
    charpoly_exact,
    forest_count_bruteforce,
    forest_count_cycle,
    regdet,
    regdet_series,
)
from .estimators import HeatKernelTransformer, RegularizedDeterminant, SpectralZeta
from .exceptions import (
    DivergenceError,
    DomainError,
    GraphSpecError,
    GraphZetaError,
    InfiniteGraphError,
    PoleError,
    RegularityError,
    ResourceError,
    UnsupportedError,
    UsageError,
)
from .graph import (
    Cycle,
    FiniteGraph,
    GraphModel,
    HalfEdgeGraph,
    Lattice,
    Product,
    build_cycle,
    build_lattice,
    build_product,
    complete_graph,
    graph_distance,
    laplacian,
    load_graph_json,
    n_similar,
    parse_graph_spec,
    spectral_moment,
    spectral_moments,
)
from .ihara import check_ihara_functional, ihara_zeta_finite, regularized_ihara, x_of_u, y_of_u
from .specfun import bessel_i0, bessel_i0e, catalan, central_binomial, log_gamma, multinomial, rgamma
from .spectral import (
    SpectralMeasure,
    convolve_atomic,
    heat_function,
    resolvent_z,
    spectral_measure,
    stieltjes_density_check,
)
from .zeta import (
    check_functional_z2,
    lattice_rho_coeff,
    residue_lattice,
    spectral_zeta,
    zeta_finite_transitive,
    zeta_lattice_continuation,
    zeta_lattice_negint,
    zeta_mellin,
    zeta_z_closed,
)

__version__ = "0.1.0"
