"""Coxeter systems, Davis chambers and L2-Betti degree supports."""

from ._coxl2 import (
    CoxeterError,
    CoxeterSystem,
    __version__,
    betti_support,
    classify,
    covolume_partial_sums,
    d_sigma_cohomology,
    execute,
    family,
    growth,
    is_spherical,
    lattice_degrees,
    lattice_report,
    me_compare,
    parse,
    sigma_candidates,
    sphericity,
)

__all__ = [
    "CoxeterError",
    "CoxeterSystem",
    "__version__",
    "betti_support",
    "classify",
    "covolume_partial_sums",
    "d_sigma_cohomology",
    "execute",
    "family",
    "growth",
    "is_spherical",
    "lattice_degrees",
    "lattice_report",
    "me_compare",
    "parse",
    "sigma_candidates",
    "sphericity",
]
