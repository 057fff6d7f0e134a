"""numba-compiled kernels. Mirrors :mod:`oamuca._kernels_numpy` one-to-one."""
import math

import numpy as np
from numba import njit

SERIES_MAX_X = 12.0
_RESCALE_AT = 1e250
_RESCALE_BY = 1e-250
# x <= 12 converges to 1e-18 well within this many terms.
_SERIES_MAX_TERMS = 200


@njit(cache=True)
def _series_row(nmax, x, out):
    # Ascending series, used only for x <= SERIES_MAX_X where cancellation stays below 1e-12.
    half = 0.5 * x
    if half == 0.0:
        # x == 0, or so small that x / 2 underflows.
        for n in range(nmax + 1):
            out[n] = 0.0
        out[0] = 1.0
        return
    log_half = math.log(half)
    q = half * half
    for n in range(nmax + 1):
        lead = n * log_half - math.lgamma(n + 1.0)
        if lead < -745.0:
            for r in range(n, nmax + 1):
                out[r] = 0.0
            return
        term = math.exp(lead)
        total = term
        peak = abs(term)
        k = 0
        while True:
            k += 1
            term *= -q / (k * (n + k))
            total += term
            if abs(term) > peak:
                peak = abs(term)
            if k * (n + k) > q and abs(term) <= 1e-18 * peak:
                break
            if k >= _SERIES_MAX_TERMS:
                break
        out[n] = total


@njit(cache=True)
def _miller_row(nmax, x, out):
    top = max(nmax, int(x))
    start = top + 20 + int(math.sqrt(160.0 * top))
    if start % 2 == 1:
        start += 1
    for n in range(nmax + 1):
        out[n] = 0.0
    above = 0.0
    cur = 1e-30
    norm = 0.0
    two_over_x = 2.0 / x
    for k in range(start, 0, -1):
        below = k * two_over_x * cur - above
        above = cur
        cur = below
        i = k - 1
        if abs(cur) > _RESCALE_AT:
            cur *= _RESCALE_BY
            above *= _RESCALE_BY
            norm *= _RESCALE_BY
            for r in range(i + 1, nmax + 1):
                out[r] *= _RESCALE_BY
        if i <= nmax:
            out[i] = cur
        if i > 0 and i % 2 == 0:
            norm += 2.0 * cur
    norm += cur
    for n in range(nmax + 1):
        out[n] /= norm


@njit(cache=True)
def bessel_table(nmax, xs):
    """``out[i, n] = J_n(xs[i])`` for ``0 <= n <= nmax``."""
    out = np.empty((xs.shape[0], nmax + 1))
    for i in range(xs.shape[0]):
        x = xs[i]
        if x <= SERIES_MAX_X:
            _series_row(nmax, x, out[i])
        else:
            _miller_row(nmax, x, out[i])
    return out


@njit(cache=True)
def dft(v):
    n = v.shape[0]
    twiddle = np.empty(n, dtype=np.complex128)
    for i in range(n):
        ang = -2.0 * math.pi * i / n
        twiddle[i] = complex(math.cos(ang), math.sin(ang))
    out = np.empty(n, dtype=np.complex128)
    for l in range(n):
        acc = 0j
        for k in range(n):
            acc += v[k] * twiddle[(k * l) % n]
        out[l] = acc
    return out


@njit(cache=True)
def idft(v):
    n = v.shape[0]
    return np.conj(dft(np.conj(v))) / n
