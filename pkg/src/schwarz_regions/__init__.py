"""Variability regions of f^(k)(z0), k <= 4, for analytic self-maps of the unit disk fixing 0."""

__version__ = "0.1.0"

from .dieudonne import (
    CanonicalInstance,
    Disk,
    Feasibility,
    GeneralInstance,
    disk_order,
    disk_order_general,
    invert_parameters,
    rogosinski_disk,
    rotation_reduce,
)
from .errors import (
    ConvexityViolation,
    DegenerateFrame,
    Infeasible,
    MissingData,
    RigidCase,
    SchwarzRegionsError,
)
from .extremal import ExtremalSpec, build_extremal, evaluate_extremal, sample_selfmap
from .jets import BlaschkeProduct, Jet, blaschke_jet, jet_variable, mobius_apply_jet
from .peschl import cho_inequality, peschl_derivatives
from .region import brute_force_region, envelope_frame, solve_t_theta, trace_boundary

__all__ = [
    "BlaschkeProduct", "CanonicalInstance", "ConvexityViolation", "DegenerateFrame", "Disk",
    "ExtremalSpec", "Feasibility", "GeneralInstance", "Infeasible", "Jet", "MissingData",
    "RigidCase", "SchwarzRegionsError", "blaschke_jet", "brute_force_region", "build_extremal",
    "cho_inequality", "disk_order", "disk_order_general", "envelope_frame", "evaluate_extremal",
    "invert_parameters", "jet_variable", "mobius_apply_jet", "peschl_derivatives",
    "rogosinski_disk", "rotation_reduce", "sample_selfmap", "solve_t_theta", "trace_boundary",
]
