"""Receive-radius optimisation and the joint radius/threshold design.

The radius problem maximises the all-mode capacity

    C(r) = sum_l B log2(1 + K_l J_{l_eff}(u(r))^2),  K_l = (beta lambda N / (4 pi d))^2 p_l^2 P / sigma^2

over ``r_min <= r <= r_max``. Its KKT conditions admit three kinds of
solution (upper bound, lower bound, interior root of dC/dr). Because the
Bessel terms oscillate, dC/dr has many roots, so every root found on a dense
grid is refined by bisection and compared against both bounds.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .capacity import (
    ModeSelection,
    capacity_with_selection,
    find_threshold_algorithm1,
    find_threshold_enumeration,
    select_modes,
)
from .channel import (
    LinkBudget,
    PowerAllocation,
    UcaLinkGeometry,
    approx_mode_gains,
    bessel_argument,
    effective_orders,
    gain_prefactor,
)
from .special import bessel_j_signed, bessel_j_table

log = logging.getLogger(__name__)

DEFAULT_GRID = 2000
SAMPLES_PER_PERIOD = 20
ROOT_TOL = 1e-10
MAX_REFINE_ROUNDS = 10

AT_MAX = "AtMax"
AT_MIN = "AtMin"
INTERIOR = "Interior"

SOLVERS = {
    "enumeration": find_threshold_enumeration,
    "algorithm1": find_threshold_algorithm1,
}

__all__ = [
    "AT_MAX",
    "AT_MIN",
    "DesignSolution",
    "INTERIOR",
    "RadiusConstraint",
    "RadiusSolution",
    "baseline_capacity",
    "bessel_argument",
    "capacity_derivative",
    "evaluate_design",
    "grid_size",
    "radius_capacity",
    "solve_joint",
    "solve_radius",
]


@dataclass(frozen=True)
class RadiusConstraint:
    r_min: float = 0.05
    r_max: float = 3.0

    def __post_init__(self):
        if not (np.isfinite(self.r_min) and np.isfinite(self.r_max)):
            raise ValueError("r_min and r_max must be finite")
        if not self.r_min > 0:
            raise ValueError(f"r_min must be > 0, got {self.r_min!r}")
        if not self.r_min < self.r_max:
            raise ValueError(f"r_min ({self.r_min!r}) must be < r_max ({self.r_max!r})")

    def clamp(self, r: float) -> float:
        return min(max(r, self.r_min), self.r_max)


class RadiusSolution(NamedTuple):
    r_r: float
    kkt_case: str
    stationary_points: list


@dataclass(frozen=True)
class DesignSolution:
    r_r_opt: float
    threshold_opt: float
    selection: ModeSelection
    capacity_bps: float
    kkt_case: str
    stationary_points: list = field(default_factory=list)
    solver: str = "enumeration"
    refine_rounds: int = 0
    threshold_iterations: int = 0


# -- curve evaluation -------------------------------------------------------


def _weights(g, b, p):
    p = np.asarray(p.factors)
    return gain_prefactor(g, b.beta) ** 2 * p * p * b.snr


def _u_and_slope(g, radii):
    s = g.d**2 + g.r_t**2 + radii**2
    u = 2.0 * math.pi * g.r_t * radii / (g.wavelength * np.sqrt(s))
    du = 2.0 * math.pi * g.r_t * (g.d**2 + g.r_t**2) / (g.wavelength * s**1.5)
    return u, du


def _curve(g, b, p, radii, slope):
    radii = np.atleast_1d(np.asarray(radii, dtype=np.float64))
    orders = effective_orders(g.n_elements)
    k = _weights(g, b, p)
    u, du = _u_and_slope(g, radii)
    top = int(np.abs(orders).max()) + 1
    table = bessel_j_table(top, u)
    j = bessel_j_signed(table, orders)
    if not slope:
        return b.bandwidth_hz / math.log(2.0) * np.log1p(k * j * j).sum(axis=-1)
    dj = 0.5 * (bessel_j_signed(table, orders - 1) - bessel_j_signed(table, orders + 1))
    terms = 2.0 * k * j * dj / (1.0 + k * j * j)
    return b.bandwidth_hz / math.log(2.0) * du * terms.sum(axis=-1)


def radius_capacity(g: UcaLinkGeometry, b: LinkBudget, p: PowerAllocation, radii=None):
    """Bessel-form capacity with fixed allocation ``p`` at ``radii`` (default ``g.r_r``)."""
    scalar = radii is None or np.isscalar(radii)
    out = _curve(g, b, p, g.r_r if radii is None else radii, slope=False)
    return float(out[0]) if scalar else out


def capacity_derivative(g: UcaLinkGeometry, b: LinkBudget, p: PowerAllocation, radii=None):
    """Analytic ``dC/dr_r`` in bit/s per metre, using ``2 J_l' = J_{l-1} - J_{l+1}``."""
    scalar = radii is None or np.isscalar(radii)
    out = _curve(g, b, p, g.r_r if radii is None else radii, slope=True)
    return float(out[0]) if scalar else out


# -- radius problem ---------------------------------------------------------


def grid_size(g: UcaLinkGeometry, c: RadiusConstraint, n_grid: int = DEFAULT_GRID) -> int:
    """Grid points needed so each Bessel half-oscillation gets ``SAMPLES_PER_PERIOD`` samples."""
    # Steepest du/dr is at r = 0; pi in u is one oscillation period.
    du_max = 2.0 * math.pi * g.r_t / (g.wavelength * math.sqrt(g.d**2 + g.r_t**2))
    period = math.pi / du_max
    needed = int(math.ceil((c.r_max - c.r_min) * SAMPLES_PER_PERIOD / period)) + 1
    return max(n_grid, needed)


def _bisect(f, lo, hi, f_lo):
    while hi - lo > ROOT_TOL:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_radius(
    g: UcaLinkGeometry,
    b: LinkBudget,
    p: PowerAllocation,
    c: RadiusConstraint,
    n_grid: int = DEFAULT_GRID,
) -> RadiusSolution:
    """Globally maximise the fixed-allocation capacity over ``[r_min, r_max]``.

    Returns the best radius, which KKT case produced it and every
    ``(radius, capacity)`` candidate examined (bounds included), sorted by radius.
    """
    if len(p) != g.n_elements:
        raise ValueError("allocation length must equal n_elements")
    n = grid_size(g, c, n_grid)
    grid = np.linspace(c.r_min, c.r_max, n)
    slope = capacity_derivative(g, b, p, grid)

    def f(r):
        return capacity_derivative(g, b, p, r)

    roots = []
    for i in range(n - 1):
        s0, s1 = slope[i], slope[i + 1]
        if s0 == 0.0 and 0 < i:
            roots.append(float(grid[i]))
        elif s0 * s1 < 0:
            roots.append(_bisect(f, float(grid[i]), float(grid[i + 1]), s0))

    cand = [c.r_min] + [r for r in roots if c.r_min < r < c.r_max] + [c.r_max]
    caps = radius_capacity(g, b, p, np.array(cand))
    # np.argmax returns the first maximum, i.e. the lowest radius on ties.
    best = int(np.argmax(caps))
    r_best = cand[best]
    if best == 0:
        case = AT_MIN
        if slope[0] > 0:
            log.debug("lower bound wins although dC/dr > 0 there")
    elif best == len(cand) - 1:
        case = AT_MAX
        if slope[-1] < 0:
            log.debug("upper bound wins although dC/dr < 0 there")
    else:
        case = INTERIOR
    points = [(float(r), float(cap)) for r, cap in zip(cand, caps)]
    return RadiusSolution(float(r_best), case, points)


# -- joint design -----------------------------------------------------------


def evaluate_design(g: UcaLinkGeometry, b: LinkBudget, r_r: float, threshold: float):
    """Re-evaluate the equal-split capacity report at ``(r_r, threshold)``."""
    gains = approx_mode_gains(g.with_radius(r_r), b)
    return capacity_with_selection(gains, select_modes(gains, threshold), b)


def baseline_capacity(g: UcaLinkGeometry, b: LinkBudget, c: RadiusConstraint) -> float:
    """All modes, uniform power, ``r_r = r_t`` clamped into the window."""
    gains = approx_mode_gains(g.with_radius(c.clamp(g.r_t)), b)
    return capacity_with_selection(gains, select_modes(gains, 0.0), b).total_bps


def _case_of(points, i):
    if i == 0:
        return AT_MIN
    if i == len(points) - 1:
        return AT_MAX
    return INTERIOR


def _select_over_candidates(g, b, rad, solver):
    """Run the threshold search at every radius candidate and keep the best.

    Ties go to the lowest radius.
    """
    best = None
    for i, (r, _) in enumerate(rad.stationary_points):
        res = SOLVERS[solver](approx_mode_gains(g.with_radius(r), b), b)
        if best is None or res.report.total_bps > best[2].report.total_bps:
            best = (r, _case_of(rad.stationary_points, i), res)
    return best


def solve_joint(
    g: UcaLinkGeometry,
    b: LinkBudget,
    c: RadiusConstraint,
    solver: str = "enumeration",
    refine: bool = False,
    n_grid: int = DEFAULT_GRID,
) -> DesignSolution:
    """Choose the receive radius, then the selection threshold.

    Step 1 solves the radius problem with power spread uniformly over all
    modes. Step 2 runs the threshold search (``"enumeration"`` or
    ``"algorithm1"``) at each radius candidate from step 1 (every stationary
    point and both bounds) and keeps the best. With ``refine=True`` step 1 is
    repeated with power only on the selected modes until the selection stops
    changing (at most 10 rounds); the best round is kept. ``g.r_r`` is ignored.
    """
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}; expected one of {sorted(SOLVERS)}")
    rad = solve_radius(g, b, PowerAllocation.uniform(g.n_elements), c, n_grid)
    r_r, case, res = _select_over_candidates(g, b, rad, solver)
    best = (r_r, case, res, rad.stationary_points)
    rounds = 0
    if refine:
        mask = res.report.selection.mask
        for rounds in range(1, MAX_REFINE_ROUNDS + 1):
            if not any(mask):
                break
            rad = solve_radius(g, b, PowerAllocation.over_mask(mask), c, n_grid)
            r_r, case, res = _select_over_candidates(g, b, rad, solver)
            if res.report.total_bps > best[2].report.total_bps:
                best = (r_r, case, res, rad.stationary_points)
            if res.report.selection.mask == mask:
                break
            mask = res.report.selection.mask
    r_r, case, res, points = best
    report = evaluate_design(g, b, r_r, res.threshold)
    return DesignSolution(
        r_r_opt=r_r,
        threshold_opt=res.threshold,
        selection=report.selection,
        capacity_bps=report.total_bps,
        kkt_case=case,
        stationary_points=points,
        solver=solver,
        refine_rounds=rounds,
        threshold_iterations=res.iterations,
    )
