"""Word problems and disk diagrams for graph products of groups, with their star metric."""
from .contact import (
    Hyperplane,
    carriers_intersect,
    contact_distance_bounds,
    essential_support,
    has_finite_order,
    hyperplane,
    hyperplanes_crossed,
    is_conjugate_into_join,
    orbit_profile,
    star_length,
)
from .diagrams import DiskDiagram, DualGraph, build_diagram, concatenate, left_comb, right_comb, validate
from .errors import BudgetExceeded, GraphProductError, InputError, InvalidDiagram
from .graph import DefiningGraph
from .groups import Free, FreeAbelian, FiniteCyclic, InfiniteCyclic, VertexGroup, parse_group
from .kernels import BACKEND
from .words import (
    Letter,
    PrismWord,
    geodesic,
    geodesic_representatives,
    is_geodesic,
    is_identity,
    multiply,
    prism_length,
    reduce_to_geodesic,
)

__version__ = "0.1.0"
