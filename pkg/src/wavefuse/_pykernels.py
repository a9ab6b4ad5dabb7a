"""Numpy implementations of the periodic filter-bank kernels.

Every kernel works along the last axis of a 2-D array and treats each
row as one period of a circular signal. The compiled module
``wavefuse._ckernels`` exposes the same functions; both accumulate taps
in ascending order so their float results agree bit for bit.
"""

import numpy as np


def analyze(x, h):
    """Circular convolution with ``h`` sampled at even positions.

    ``y[:, k] = sum_m h[m] * x[:, (2k - m) mod W]``
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    width = x.shape[1]
    base = 2 * np.arange(width // 2)
    y = np.zeros((x.shape[0], width // 2))
    for m in range(len(h)):
        y += h[m] * x[:, (base - m) % width]
    return y


def synthesize(c, d):
    """Adjoint of :func:`analyze` with dual filter ``d``.

    ``x[:, n] = sum_m d[m] * u[:, (n + m) mod W]`` where ``u`` is ``c``
    upsampled by two (zeros at odd positions) and ``W = 2 * c.shape[1]``.
    """
    c = np.ascontiguousarray(c, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    width = 2 * c.shape[1]
    u = np.zeros((c.shape[0], width))
    u[:, ::2] = c
    base = np.arange(width)
    x = np.zeros((c.shape[0], width))
    for m in range(len(d)):
        x += d[m] * u[:, (base + m) % width]
    return x


def atrous(x, h, dilation):
    """Undecimated circular convolution with ``h`` dilated by ``dilation``."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    width = x.shape[1]
    base = np.arange(width)
    y = np.zeros_like(x)
    for m in range(len(h)):
        y += h[m] * x[:, (base - m * dilation) % width]
    return y


def atrous_adjoint(y, h, dilation):
    """Adjoint (circular correlation) of :func:`atrous`."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    width = y.shape[1]
    base = np.arange(width)
    x = np.zeros_like(y)
    for m in range(len(h)):
        x += h[m] * y[:, (base + m * dilation) % width]
    return x


def lift53_forward(x):
    """LeGall 5/3 integer lifting, periodic. Returns ``(low, high)``."""
    x = np.ascontiguousarray(x, dtype=np.int64)
    even = x[:, 0::2]
    odd = x[:, 1::2]
    high = odd - ((even + np.roll(even, -1, axis=1)) >> 1)
    low = even + ((np.roll(high, 1, axis=1) + high + 2) >> 2)
    return low, high


def lift53_inverse(low, high):
    """Exact inverse of :func:`lift53_forward`."""
    low = np.ascontiguousarray(low, dtype=np.int64)
    high = np.ascontiguousarray(high, dtype=np.int64)
    even = low - ((np.roll(high, 1, axis=1) + high + 2) >> 2)
    odd = high + ((even + np.roll(even, -1, axis=1)) >> 1)
    x = np.empty((low.shape[0], 2 * low.shape[1]), dtype=np.int64)
    x[:, 0::2] = even
    x[:, 1::2] = odd
    return x
