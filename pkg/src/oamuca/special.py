"""Integer-order Bessel functions of the first kind and the direct DFT.

Bessel values come from the ascending power series for ``x <= 12`` and from
Miller's normalised backward recurrence above that. The DFT is the literal
O(N^2) sum with the ``exp(-j 2 pi k l / N)`` kernel (no 1/N factor);
:func:`idft` carries the 1/N.
"""
import numpy as np

from ._backend import kernels

MAX_ORDER = 512
MAX_ARG = 1.0e4

__all__ = [
    "MAX_ARG",
    "MAX_ORDER",
    "bessel_j",
    "bessel_j_derivative",
    "bessel_j_signed",
    "bessel_j_table",
    "dft",
    "idft",
]


def _check_domain(order, x):
    if x < 0 or not np.isfinite(x):
        raise ValueError(f"Bessel argument must be finite and >= 0, got {x!r}")
    if x > MAX_ARG:
        raise ValueError(f"Bessel argument {x!r} exceeds supported bound {MAX_ARG:g}")
    if abs(order) > MAX_ORDER:
        raise ValueError(f"|order| = {abs(order)} exceeds supported bound {MAX_ORDER}")


def bessel_j_table(nmax, x):
    """Tabulate ``J_0 .. J_nmax`` at every point of ``x``.

    Parameters
    ----------
    nmax : int
        Highest (non-negative) order returned.
    x : array_like
        Arguments, each in ``[0, 1e4]``.

    Returns
    -------
    numpy.ndarray
        Shape ``x.shape + (nmax + 1,)``.
    """
    nmax = int(nmax)
    if nmax < 0 or nmax > MAX_ORDER + 1:
        raise ValueError(f"nmax must lie in [0, {MAX_ORDER + 1}], got {nmax}")
    xa = np.asarray(x, dtype=np.float64)
    flat = np.ascontiguousarray(xa.ravel())
    if flat.size and (np.any(flat < 0) or np.any(flat > MAX_ARG) or not np.all(np.isfinite(flat))):
        raise ValueError("Bessel arguments must be finite and lie in [0, 1e4]")
    if flat.size == 0:
        return np.empty(xa.shape + (nmax + 1,))
    return kernels.bessel_table(nmax, flat).reshape(xa.shape + (nmax + 1,))


def bessel_j_signed(table, orders):
    """Pick ``J_order`` for signed ``orders`` out of a table from :func:`bessel_j_table`.

    Negative orders use ``J_{-m} = (-1)^m J_m``, which is exact in floating point.
    """
    orders = np.asarray(orders)
    mag = np.abs(orders)
    vals = table[..., mag]
    odd_negative = (orders < 0) & (mag % 2 == 1)
    return np.where(odd_negative, -vals, vals)


def bessel_j(order, x):
    """Bessel function of the first kind ``J_order(x)`` for integer order.

    >>> bessel_j(0, 0.0)
    1.0
    """
    order = int(order)
    x = float(x)
    _check_domain(order, x)
    row = kernels.bessel_table(abs(order), np.array([x]))[0]
    return float(bessel_j_signed(row, order))


def bessel_j_derivative(order, x):
    """``dJ_order/dx`` via ``(J_{order-1}(x) - J_{order+1}(x)) / 2``."""
    order = int(order)
    x = float(x)
    _check_domain(order, x)
    row = kernels.bessel_table(abs(order) + 1, np.array([x]))[0]
    lo, hi = bessel_j_signed(row, np.array([order - 1, order + 1]))
    return float(0.5 * (lo - hi))


def dft(v):
    """Unnormalised forward DFT, ``out[l] = sum_n v[n] exp(-2j pi n l / N)``."""
    v = np.ascontiguousarray(np.atleast_1d(np.asarray(v, dtype=np.complex128)))
    if v.ndim != 1 or v.size < 1:
        raise ValueError("dft expects a non-empty 1-D vector")
    if not np.all(np.isfinite(v)):
        raise ValueError("dft input contains non-finite values")
    return kernels.dft(v)


def idft(v):
    """Inverse of :func:`dft` (includes the 1/N factor)."""
    v = np.ascontiguousarray(np.atleast_1d(np.asarray(v, dtype=np.complex128)))
    if v.ndim != 1 or v.size < 1:
        raise ValueError("idft expects a non-empty 1-D vector")
    return kernels.idft(v)
