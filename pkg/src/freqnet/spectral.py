"""Unnormalized 2D DFT of image blocks and centered magnitude spectra.

The transform is the plain double sum

    F(u, v) = sum_x sum_y f(x, y) * exp(-j*2*pi*(u*x/A + v*y/B))

with no normalization factor, computed through an FFT. ``dft2d_naive``
evaluates the same sum literally with quadruple loops and is kept as an
independent reference for tests. All arithmetic is double precision.
"""

from __future__ import annotations

import cmath
import math

import numpy as np


def _check_square_block(block: np.ndarray) -> np.ndarray:
    block = np.asarray(block, dtype=np.float64)
    if block.ndim != 2 or block.shape[0] != block.shape[1]:
        raise ValueError(f"expected a square block, got shape {block.shape}")
    if block.shape[0] < 2:
        raise ValueError(f"block side must be >= 2, got {block.shape[0]}")
    return block


def dft2d(block: np.ndarray) -> np.ndarray:
    """Fast unnormalized 2D DFT of a square real block."""
    return np.fft.fft2(_check_square_block(block))


def dft2d_naive(block: np.ndarray) -> np.ndarray:
    """Brute-force O(N^4) DFT, evaluating the defining sum term by term."""
    block = _check_square_block(block)
    side = block.shape[0]
    out = np.zeros((side, side), dtype=np.complex128)
    for u in range(side):
        for v in range(side):
            acc = 0.0 + 0.0j
            for x in range(side):
                for y in range(side):
                    angle = -2.0 * math.pi * (u * x / side + v * y / side)
                    acc += block[x, y] * cmath.exp(1j * angle)
            out[u, v] = acc
    return out


def magnitude_centered(spectrum: np.ndarray) -> np.ndarray:
    """Magnitude sqrt(Re^2 + Im^2), circularly shifted so DC sits at the center.

    For even side N the half-period shift puts the zero-frequency term at
    index (N/2, N/2), making frequency grow radially outward.
    """
    spectrum = np.asarray(spectrum)
    if spectrum.ndim != 2 or spectrum.shape[0] != spectrum.shape[1]:
        raise ValueError(f"expected a square spectrum, got shape {spectrum.shape}")
    return np.fft.fftshift(np.abs(spectrum))
