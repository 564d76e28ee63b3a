"""Python access to the amconv core."""

from ._core import (
    ModelParams,
    action,
    density_of_states,
    elliptic_k,
    energy_range,
    exact_eigenvectors,
    exact_spectrum,
    fixed_points,
    kx_spectrum,
    make_params,
    mf_trajectory,
    mp_trajectory,
    period,
    quantize,
    separatrix_energy,
    teardrop_radius,
    turning_points,
    wkb_state,
)

__all__ = [
    "ModelParams",
    "action",
    "density_of_states",
    "elliptic_k",
    "energy_range",
    "exact_eigenvectors",
    "exact_spectrum",
    "fixed_points",
    "kx_spectrum",
    "make_params",
    "mf_trajectory",
    "mp_trajectory",
    "period",
    "quantize",
    "separatrix_energy",
    "teardrop_radius",
    "turning_points",
    "wkb_state",
]
