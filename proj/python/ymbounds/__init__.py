"""Python bindings for the ymbounds lattice gauge bound checks."""

from ._core import (
    DivergenceError,
    angular_eigenvalues,
    c_lower,
    c_upper,
    c_upper_source,
    coincident_constant,
    estimate_partition,
    haar_sample,
    jensen_xi,
    lattice_counts,
    particle_mass,
    propagator_scaled,
    propagator_unscaled,
    single_plaquette_bounds,
    verify_quadratic_bound,
    z_l,
    z_u,
    z_u_source,
)

__all__ = [
    "DivergenceError",
    "angular_eigenvalues",
    "c_lower",
    "c_upper",
    "c_upper_source",
    "coincident_constant",
    "estimate_partition",
    "haar_sample",
    "jensen_xi",
    "lattice_counts",
    "particle_mass",
    "propagator_scaled",
    "propagator_unscaled",
    "single_plaquette_bounds",
    "verify_quadratic_bound",
    "z_l",
    "z_u",
    "z_u_source",
]
