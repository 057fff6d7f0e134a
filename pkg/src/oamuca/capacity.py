"""Link capacity, threshold mode selection and threshold search.

A mode ``l`` is kept when its normalised gain ``|J_{l_eff}(u)|`` (stored as
``ModeGains.metric``) reaches the threshold; power is then split equally over
the kept modes. Two threshold searches are offered: the published trisection
(:func:`find_threshold_algorithm1`) and an exhaustive scan over the only
thresholds that can change the selection (:func:`find_threshold_enumeration`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .channel import LinkBudget, ModeGains, PowerAllocation

ALG1_MAX_ITER = 200
ALG1_REL_TOL = 1e-12

__all__ = [
    "ALG1_MAX_ITER",
    "CapacityReport",
    "ModeSelection",
    "ThresholdResult",
    "capacity",
    "capacity_with_selection",
    "find_threshold_algorithm1",
    "find_threshold_enumeration",
    "select_modes",
]


@dataclass(frozen=True)
class ModeSelection:
    mask: tuple
    threshold: float

    def __post_init__(self):
        object.__setattr__(self, "mask", tuple(bool(m) for m in self.mask))
        if not self.threshold >= 0:
            raise ValueError(f"threshold must be >= 0, got {self.threshold!r}")

    @property
    def count(self) -> int:
        return sum(self.mask)

    @property
    def indices(self) -> list:
        return [i for i, m in enumerate(self.mask) if m]


@dataclass(frozen=True)
class CapacityReport:
    total_bps: float
    per_mode_bps: tuple
    snr_per_mode: tuple
    selection: ModeSelection


class ThresholdResult(NamedTuple):
    threshold: float
    report: CapacityReport
    iterations: int
    converged: bool = True


def _rates(snr, bandwidth):
    per_mode = bandwidth * np.log1p(snr) / math.log(2.0)
    # Summed in mode order so the total is reproducible bit for bit.
    return float(math.fsum(per_mode)), per_mode


def capacity(gains: ModeGains, p: PowerAllocation, b: LinkBudget) -> CapacityReport:
    """Sum rate ``sum_l B log2(1 + gamma_l^2 p_l^2 P / sigma^2)``.

    Modes with ``p_l == 0`` count as deselected in the attached selection.
    """
    if len(gains) != len(p):
        raise ValueError(f"gains ({len(gains)}) and allocation ({len(p)}) differ in length")
    snr = gains.gains**2 * p.factors**2 * b.total_power / b.noise_variance
    total, per_mode = _rates(snr, b.bandwidth_hz)
    sel = ModeSelection(p.factors > 0, 0.0)
    return CapacityReport(total, tuple(per_mode.tolist()), tuple(snr.tolist()), sel)


def select_modes(gains: ModeGains, threshold: float) -> ModeSelection:
    """Keep every mode whose metric is ``>= threshold`` (ties are kept)."""
    if not threshold >= 0:
        raise ValueError(f"threshold must be >= 0, got {threshold!r}")
    return ModeSelection(gains.metric >= threshold, float(threshold))


def capacity_with_selection(gains: ModeGains, sel: ModeSelection, b: LinkBudget) -> CapacityReport:
    """Capacity with total power split equally over the selected modes."""
    mask = np.asarray(sel.mask, dtype=bool)
    if mask.size != len(gains):
        raise ValueError(f"selection ({mask.size}) and gains ({len(gains)}) differ in length")
    count = int(mask.sum())
    if count == 0:
        zeros = (0.0,) * mask.size
        return CapacityReport(0.0, zeros, zeros, sel)
    snr = np.where(mask, gains.gains**2 * b.total_power / (b.noise_variance * count), 0.0)
    total, per_mode = _rates(snr, b.bandwidth_hz)
    return CapacityReport(total, tuple(per_mode.tolist()), tuple(snr.tolist()), sel)


def _capacity_at(gains, threshold, b):
    return capacity_with_selection(gains, select_modes(gains, threshold), b)


def _differs(a, b):
    return abs(a - b) > ALG1_REL_TOL * max(abs(a), abs(b))


def find_threshold_algorithm1(gains: ModeGains, b: LinkBudget, max_iter: int = ALG1_MAX_ITER) -> ThresholdResult:
    """Trisection search for the threshold.

    Starts from ``[min metric, max metric]``, probes the interval's quarter,
    half and three-quarter points, keeps the part around the best probe and
    stops once the best capacity repeats. The first probe wins ties, as in the
    published pseudocode. Stops after ``max_iter`` rounds regardless.
    """
    lo = float(gains.metric.min())
    hi = float(gains.metric.max())
    best = 0.0
    report = None
    w = lo
    for it in range(1, max_iter + 1):
        w2 = 0.5 * (lo + hi)
        w1 = 0.5 * (lo + w2)
        w3 = 0.5 * (w2 + hi)
        r1, r2, r3 = (_capacity_at(gains, t, b) for t in (w1, w2, w3))
        top = max(r1.total_bps, r2.total_bps, r3.total_bps)
        if r1.total_bps == top:
            w, report = w1, r1
            hi = w2
        elif r2.total_bps == top:
            w, report = w2, r2
            lo, hi = w1, w3
        else:
            w, report = w3, r3
            lo = w2
        if not _differs(best, report.total_bps):
            return ThresholdResult(w, report, it)
        best = report.total_bps
    return ThresholdResult(w, report, max_iter, False)


def find_threshold_enumeration(gains: ModeGains, b: LinkBudget) -> ThresholdResult:
    """Best threshold among the distinct metric values (each keeps the top-k modes).

    Capacity is piecewise constant in the threshold, so this family reaches
    every achievable selection. Ties go to the higher threshold, i.e. fewer modes.
    """
    candidates = np.unique(gains.metric)[::-1]
    best = None
    best_w = 0.0
    for w in candidates:
        rep = _capacity_at(gains, float(w), b)
        if best is None or rep.total_bps > best.total_bps:
            best, best_w = rep, float(w)
    return ThresholdResult(best_w, best, len(candidates))
