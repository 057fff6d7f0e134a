"""UCA-to-UCA line-of-sight channel and OAM mode multiplexing.

Both arrays hold ``N`` elements. Transmit element ``n`` sits at azimuth
``2 pi (n-1) / N`` on a circle of radius ``r_t``; receive element ``m`` sits at
``2 pi (m-1) / N + alpha`` on a circle of radius ``r_r`` a distance ``d`` away
along the common axis. The resulting channel matrix is circulant, so OAM
modes (DFT columns) diagonalise it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .special import bessel_j_signed, bessel_j_table, dft, idft

TWO_PI = 2.0 * math.pi
CIRCULANT_TOL = 1e-9

__all__ = [
    "ChannelMatrix",
    "LinkBudget",
    "ModeGains",
    "NotCirculantError",
    "PowerAllocation",
    "UcaLinkGeometry",
    "add_noise",
    "approx_mode_gains",
    "bessel_argument",
    "build_channel_matrix",
    "circulancy_residual",
    "demux_receive",
    "distance_matrix",
    "effective_orders",
    "element_distance",
    "exact_mode_gains",
    "gain_prefactor",
    "idft_matrix",
    "mode_eigenvalues",
    "mux_transmit",
]


class NotCirculantError(ValueError):
    """Raised when a matrix handed to the mode-gain path is not circulant."""


@dataclass(frozen=True)
class UcaLinkGeometry:
    """Physical layout of an aligned transmit/receive UCA pair (lengths in metres)."""

    n_elements: int
    r_t: float
    r_r: float
    d: float
    alpha: float = 0.0
    wavelength: float = 0.1

    def __post_init__(self):
        if int(self.n_elements) != self.n_elements or self.n_elements < 1:
            raise ValueError(f"n_elements must be a positive integer, got {self.n_elements!r}")
        for name in ("r_t", "r_r", "d", "wavelength"):
            val = getattr(self, name)
            if not (np.isfinite(val) and val > 0):
                raise ValueError(f"{name} must be finite and > 0, got {val!r}")
        if not np.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha!r}")
        object.__setattr__(self, "n_elements", int(self.n_elements))
        alpha = float(self.alpha) % TWO_PI
        # A tiny negative angle rounds up to exactly 2 pi.
        object.__setattr__(self, "alpha", 0.0 if alpha == TWO_PI else alpha)

    def with_radius(self, r_r: float) -> "UcaLinkGeometry":
        return UcaLinkGeometry(self.n_elements, self.r_t, r_r, self.d, self.alpha, self.wavelength)


@dataclass(frozen=True)
class LinkBudget:
    """Antenna constant ``beta``, bandwidth (Hz), noise variance and total power (W)."""

    beta: float = 1.0
    bandwidth_hz: float = 20e6
    noise_variance: float = 1.0
    total_power: float = 1.0

    def __post_init__(self):
        for name in ("beta", "bandwidth_hz", "noise_variance", "total_power"):
            val = getattr(self, name)
            if not (np.isfinite(val) and val > 0):
                raise ValueError(f"{name} must be finite and > 0, got {val!r}")

    @classmethod
    def from_snr_db(cls, snr_db, beta=1.0, bandwidth_hz=20e6, noise_variance=1.0):
        """Budget whose ``total_power / noise_variance`` equals ``snr_db``."""
        return cls(beta, bandwidth_hz, noise_variance, noise_variance * 10.0 ** (snr_db / 10.0))

    @property
    def snr(self) -> float:
        return self.total_power / self.noise_variance


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ChannelMatrix:
    entries: np.ndarray
    geometry: UcaLinkGeometry
    beta: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(np.asarray(self.entries, dtype=np.complex128)))

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class ModeGains:
    """Per-mode amplitude gains ``gamma_l``, ``l = 0 .. N-1``.

    ``metric`` is the gain normalised by the large-array prefactor, i.e.
    ``|J_l(u)|`` for the Bessel form. Mode selection thresholds act on it.
    """

    gains: np.ndarray
    source: str
    metric: np.ndarray = field(default=None)

    def __post_init__(self):
        gains = np.asarray(self.gains, dtype=np.float64)
        if gains.ndim != 1 or gains.size < 1:
            raise ValueError("gains must be a non-empty 1-D array")
        if not np.all(np.isfinite(gains)) or np.any(gains < 0):
            raise ValueError("gains must be finite and non-negative")
        if self.source not in ("exact", "bessel_approx"):
            raise ValueError(f"unknown gain source {self.source!r}")
        metric = gains if self.metric is None else np.asarray(self.metric, dtype=np.float64)
        if metric.shape != gains.shape:
            raise ValueError("metric and gains must have the same length")
        object.__setattr__(self, "gains", _frozen(gains))
        object.__setattr__(self, "metric", _frozen(metric))

    def __len__(self):
        return self.gains.size


@dataclass(frozen=True)
class PowerAllocation:
    """Amplitude-domain allocation factors ``p_l`` with ``sum(p_l**2) == 1``."""

    factors: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.factors, dtype=np.float64)
        if p.ndim != 1 or p.size < 1:
            raise ValueError("factors must be a non-empty 1-D array")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise ValueError("factors must be finite and non-negative")
        if abs(np.sum(p * p) - 1.0) > 1e-12:
            raise ValueError(f"sum of squared factors must be 1, got {np.sum(p * p)!r}")
        object.__setattr__(self, "factors", _frozen(p))

    @classmethod
    def uniform(cls, n: int) -> "PowerAllocation":
        return cls(np.full(n, 1.0 / math.sqrt(n)))

    @classmethod
    def over_mask(cls, mask) -> "PowerAllocation":
        """Equal split over the ``True`` entries of ``mask``."""
        mask = np.asarray(mask, dtype=bool)
        count = int(mask.sum())
        if count == 0:
            raise ValueError("cannot allocate power over an empty mask")
        return cls(np.where(mask, 1.0 / math.sqrt(count), 0.0))

    def __len__(self):
        return self.factors.size


def _squared_distance(g, half_sine):
    # d^2 + r_t^2 + r_r^2 - 2 r_t r_r cos(delta), rearranged so every term is >= 0.
    return g.d**2 + (g.r_t - g.r_r) ** 2 + 4.0 * g.r_t * g.r_r * half_sine**2


def element_distance(g: UcaLinkGeometry, m: int, n: int) -> float:
    """Distance from transmit element ``n`` to receive element ``m`` (1-based)."""
    N = g.n_elements
    if not (1 <= m <= N and 1 <= n <= N):
        raise IndexError(f"element indices must lie in [1, {N}], got m={m}, n={n}")
    delta = TWO_PI * ((n - m) % N) / N - g.alpha
    return math.sqrt(_squared_distance(g, math.sin(0.5 * delta)))


def distance_matrix(g: UcaLinkGeometry) -> np.ndarray:
    """All ``d_mn`` at once; row index is the receive element."""
    N = g.n_elements
    # Index difference taken mod N first so equal diagonals are bit-identical.
    diff = (np.arange(N)[None, :] - np.arange(N)[:, None]) % N
    delta = TWO_PI * diff / N - g.alpha
    return np.sqrt(_squared_distance(g, np.sin(0.5 * delta)))


def build_channel_matrix(g: UcaLinkGeometry, b: LinkBudget) -> ChannelMatrix:
    """Free-space gains ``beta lambda exp(-j 2 pi d_mn / lambda) / (4 pi d_mn)``."""
    dist = distance_matrix(g)
    lam = g.wavelength
    h = b.beta * lam * np.exp(-1j * TWO_PI * dist / lam) / (4.0 * math.pi * dist)
    return ChannelMatrix(h, g, b.beta)


def circulancy_residual(h) -> float:
    """``max |h[m, n] - h[0, (n - m) mod N]|`` relative to ``max |h|``."""
    a = h.entries if isinstance(h, ChannelMatrix) else np.asarray(h)
    n = a.shape[0]
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    scale = np.abs(a).max()
    if scale == 0:
        return 0.0
    return float(np.abs(a - a[0][idx]).max() / scale)


def gain_prefactor(g: UcaLinkGeometry, beta: float = 1.0) -> float:
    """Large-array amplitude ``beta lambda N / (4 pi d)`` multiplying ``|J_l(u)|``."""
    return beta * g.wavelength * g.n_elements / (4.0 * math.pi * g.d)


def effective_orders(n: int) -> np.ndarray:
    """Physical OAM order of DFT bin ``l``: ``l`` for ``l <= N/2``, else ``l - N``."""
    l = np.arange(n)
    return np.where(2 * l <= n, l, l - n)


def bessel_argument(g: UcaLinkGeometry, derivative: bool = False):
    """``u = 2 pi r_t r_r / (lambda sqrt(d^2 + r_t^2 + r_r^2))``.

    With ``derivative=True`` returns ``(u, du/dr_r)``.
    """
    s = g.d**2 + g.r_t**2 + g.r_r**2
    u = TWO_PI * g.r_t * g.r_r / (g.wavelength * math.sqrt(s))
    if not derivative:
        return u
    du = TWO_PI * g.r_t * (g.d**2 + g.r_t**2) / (g.wavelength * s**1.5)
    return u, du


def exact_mode_gains(h: ChannelMatrix) -> ModeGains:
    """``gamma_l = |DFT(first row of H)[l]|``; equal to the singular values of H."""
    res = circulancy_residual(h)
    if res > CIRCULANT_TOL:
        raise NotCirculantError(f"channel matrix is not circulant (residual {res:.3e})")
    gains = np.abs(dft(h.entries[0]))
    return ModeGains(gains, "exact", gains / gain_prefactor(h.geometry, h.beta))


def mode_eigenvalues(h: ChannelMatrix) -> np.ndarray:
    """Diagonal of ``W^H H W``: complex gain seen by OAM mode ``l`` after demux.

    This is the DFT bin ``-l mod N`` of the first row, so its modulus matches
    :func:`exact_mode_gains` up to that index reversal (identical for ``alpha = 0``).
    """
    return h.n * idft(h.entries[0])


def approx_mode_gains(g: UcaLinkGeometry, b: LinkBudget) -> ModeGains:
    """Bessel-form gains ``(beta lambda N / (4 pi d)) |J_{l_eff}(u)|``."""
    orders = effective_orders(g.n_elements)
    u = bessel_argument(g)
    table = bessel_j_table(int(np.abs(orders).max()), u)
    metric = np.abs(bessel_j_signed(table, orders))
    return ModeGains(gain_prefactor(g, b.beta) * metric, "bessel_approx", metric)


def idft_matrix(n: int) -> np.ndarray:
    """Unitary mux matrix ``W[n, l] = exp(j 2 pi n l / N) / sqrt(N)``."""
    k = np.outer(np.arange(n), np.arange(n)) % n
    return np.exp(1j * TWO_PI * k / n) / math.sqrt(n)


def mux_transmit(s, p: PowerAllocation) -> np.ndarray:
    """Element drive signals ``x = W P s``."""
    s = np.asarray(s, dtype=np.complex128)
    if s.ndim != 1 or s.size != len(p):
        raise ValueError(f"symbol vector length {s.size} does not match allocation length {len(p)}")
    return math.sqrt(s.size) * idft(p.factors * s)


def demux_receive(y) -> np.ndarray:
    """Per-mode outputs ``W^H y``."""
    y = np.asarray(y, dtype=np.complex128)
    if y.ndim != 1 or y.size < 1:
        raise ValueError("receive vector must be a non-empty 1-D array")
    return dft(y) / math.sqrt(y.size)


def add_noise(y, noise_variance: float, seed: int) -> np.ndarray:
    """Add circularly-symmetric complex Gaussian noise of variance ``noise_variance`` per element."""
    if noise_variance < 0:
        raise ValueError("noise_variance must be >= 0")
    y = np.array(y, dtype=np.complex128)
    if noise_variance == 0:
        return y
    rng = np.random.default_rng(seed)
    scale = math.sqrt(noise_variance / 2.0)
    z = rng.standard_normal(y.shape) + 1j * rng.standard_normal(y.shape)
    return y + scale * z
