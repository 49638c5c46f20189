"""Exact Hilbert-series, localization and volume computations for smooth toric Fano polytopes."""
from .catalog import catalog_get, catalog_list, verify_all, verify_entry
from .errors import ConsistencyError, DomainError, FanoHilbertError, PoleError, ValidationError
from .exactalg import LaurentSeriesRF, Poly, RationalFunction, bernoulli_plus, matq_rank_basis
from .expansion import (
    ReebVector,
    coefficient_data,
    coefficient_gradients,
    coefficient_values,
    factor_series,
    gradient_generating_check,
    line_series,
    span_report,
)
from .hilbert import brion_check, msy_eval, series_coefficient_check, simplicial_series_eval
from .localization import (
    FixedPointSet,
    LinearForm,
    c1_top_integral,
    c1sq_c2_integral,
    derived_fixed_points,
    load_fixed_points,
    localize,
    span_compare,
)
from .polytope import FanoPolytope, PolarPolytope, lattice_points, polar_dual, polar_volume, reeb_margin, validate
from .volmin import VolMinConfig, minimize_volume, objective_and_gradient, post_minimization_report

__version__ = "0.1.0"
