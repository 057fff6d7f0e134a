"""Pure-numpy kernels, vectorised over the argument array.

Same contracts as :mod:`oamuca._kernels_numba`. Results agree with the
compiled path to rounding (~1e-15), not bit for bit.
"""
import math

import numpy as np

SERIES_MAX_X = 12.0
_SERIES_TERMS = 90
_RESCALE_AT = 1e250
_RESCALE_BY = 1e-250


def _series(nmax, xs):
    orders = np.arange(nmax + 1)
    log_fact = np.array([math.lgamma(n + 1.0) for n in orders])
    half = 0.5 * xs
    with np.errstate(divide="ignore", invalid="ignore"):
        log_half = np.log(half)
        lead = orders[None, :] * log_half[:, None] - log_fact[None, :]
    lead = np.where(half[:, None] == 0.0, np.where(orders[None, :] == 0, 0.0, -np.inf), lead)
    term = np.exp(lead)
    total = term.copy()
    q = (half * half)[:, None]
    for k in range(1, _SERIES_TERMS + 1):
        term = term * (-q / (k * (orders + k)))
        total += term
    return total


def _miller(nmax, xs):
    top = max(nmax, int(xs.max()))
    start = top + 20 + int(math.sqrt(160.0 * top))
    start += start % 2
    out = np.zeros((xs.size, nmax + 1))
    above = np.zeros_like(xs)
    cur = np.full_like(xs, 1e-30)
    norm = np.zeros_like(xs)
    two_over_x = 2.0 / xs
    for k in range(start, 0, -1):
        cur, above = k * two_over_x * cur - above, cur
        i = k - 1
        big = np.abs(cur) > _RESCALE_AT
        if big.any():
            cur[big] *= _RESCALE_BY
            above[big] *= _RESCALE_BY
            norm[big] *= _RESCALE_BY
            out[big, i + 1:] *= _RESCALE_BY
        if i <= nmax:
            out[:, i] = cur
        if i > 0 and i % 2 == 0:
            norm += 2.0 * cur
    norm += cur
    return out / norm[:, None]


def bessel_table(nmax, xs):
    """``out[i, n] = J_n(xs[i])`` for ``0 <= n <= nmax``."""
    xs = np.asarray(xs, dtype=np.float64)
    out = np.empty((xs.size, nmax + 1))
    small = xs <= SERIES_MAX_X
    if small.any():
        out[small] = _series(nmax, xs[small])
    if not small.all():
        out[~small] = _miller(nmax, xs[~small])
    return out


def dft(v):
    v = np.asarray(v, dtype=np.complex128)
    n = v.size
    twiddle = np.exp(-2j * np.pi * np.arange(n) / n)
    idx = np.outer(np.arange(n), np.arange(n)) % n
    return twiddle[idx] @ v


def idft(v):
    v = np.asarray(v, dtype=np.complex128)
    return np.conj(dft(np.conj(v))) / v.size
