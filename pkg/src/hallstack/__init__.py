"""Symbolic stratified computation of rank-two pair invariants."""

from .classes import NumClass, SheafClass, weak_stability
from .hall import (
    HallElement,
    Invariant,
    delta_ss_rank2,
    epsilon_rank2,
    epsilon_strata_psi,
    hall_product,
    lie_morphism_psi,
)
from .oracle import GeometryOracle, builtin_geometry, conifold, load_geometry
from .pipeline import compute_direct, compute_formula, consistency_report, integrals_from_oracle
from .polys import ParamPoly, ParamRational, ParamSpace
from .stackfun import Convention, StackFunction, normalize
from .wallcrossing import joyce_song_chi, wallcrossing_general, wallcrossing_rank2

__all__ = [
    "Convention",
    "GeometryOracle",
    "HallElement",
    "Invariant",
    "NumClass",
    "ParamPoly",
    "ParamRational",
    "ParamSpace",
    "SheafClass",
    "StackFunction",
    "builtin_geometry",
    "compute_direct",
    "compute_formula",
    "conifold",
    "consistency_report",
    "delta_ss_rank2",
    "epsilon_rank2",
    "epsilon_strata_psi",
    "hall_product",
    "integrals_from_oracle",
    "joyce_song_chi",
    "lie_morphism_psi",
    "load_geometry",
    "normalize",
    "wallcrossing_general",
    "wallcrossing_rank2",
    "weak_stability",
]
