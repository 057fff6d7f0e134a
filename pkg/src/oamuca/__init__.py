"""Receive-UCA design for OAM multiplexed line-of-sight links.

Modules
-------
special
    Integer-order Bessel functions and the N-point DFT.
channel
    Array geometry, circulant channel matrix, mode gains, mux/demux.
capacity
    Sum rate, threshold mode selection and threshold search.
optimizer
    Receive-radius optimisation and the joint radius/threshold design.
harness
    Configurations, presets, sweeps and oracle cross-checks.
"""
from ._backend import BACKEND
from .capacity import (
    CapacityReport,
    ModeSelection,
    capacity,
    capacity_with_selection,
    find_threshold_algorithm1,
    find_threshold_enumeration,
    select_modes,
)
from .channel import (
    ChannelMatrix,
    LinkBudget,
    ModeGains,
    NotCirculantError,
    PowerAllocation,
    UcaLinkGeometry,
    add_noise,
    approx_mode_gains,
    build_channel_matrix,
    demux_receive,
    element_distance,
    exact_mode_gains,
    mux_transmit,
)
from .optimizer import (
    DesignSolution,
    RadiusConstraint,
    bessel_argument,
    capacity_derivative,
    solve_joint,
    solve_radius,
)
from .special import bessel_j, bessel_j_derivative, dft, idft

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CapacityReport",
    "ChannelMatrix",
    "DesignSolution",
    "LinkBudget",
    "ModeGains",
    "ModeSelection",
    "NotCirculantError",
    "PowerAllocation",
    "RadiusConstraint",
    "UcaLinkGeometry",
    "add_noise",
    "approx_mode_gains",
    "bessel_argument",
    "bessel_j",
    "bessel_j_derivative",
    "build_channel_matrix",
    "capacity",
    "capacity_derivative",
    "capacity_with_selection",
    "demux_receive",
    "dft",
    "element_distance",
    "exact_mode_gains",
    "find_threshold_algorithm1",
    "find_threshold_enumeration",
    "idft",
    "mux_transmit",
    "select_modes",
    "solve_joint",
    "solve_radius",
]
