"""Smooth frequency-plane window primitives shared by the multiscale transforms.

All windows are built from a C1 smoothstep ramp mapped through sin/cos of
(pi/2 * ramp), so that a rising and a falling window across the same
transition satisfy rise^2 + fall^2 = 1 exactly. Telescoping products of
such pairs give partitions of unity (in the squares) over the frequency
plane, which is what makes the transforms numerically tight frames.
"""

from __future__ import annotations

import numpy as np


def smoothstep(t: np.ndarray | float) -> np.ndarray:
    """C1 ramp: 0 for t<=0, 1 for t>=1, 3t^2 - 2t^3 in between."""
    t = np.clip(t, 0.0, 1.0)
    return t * t * (3.0 - 2.0 * t)


def rise(x: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Window edge going 0 -> 1 over [lo, hi]; squares with fall() to 1."""
    return np.sin(0.5 * np.pi * smoothstep((x - lo) / (hi - lo)))


def fall(x: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Window edge going 1 -> 0 over [lo, hi]."""
    return np.cos(0.5 * np.pi * smoothstep((x - lo) / (hi - lo)))


def freq_grids(h: int, w: int) -> tuple[np.ndarray, np.ndarray]:
    """Normalized frequency grids (unshifted layout), each axis in [-1, 1).

    1.0 corresponds to the Nyquist frequency of the axis.
    """
    fy = np.fft.fftfreq(h) * 2.0
    fx = np.fft.fftfreq(w) * 2.0
    return np.meshgrid(fy, fx, indexing="ij")


def angular_windows(theta: np.ndarray, n_wedges: int, period: float) -> list[np.ndarray]:
    """Equiangular wedge windows whose squares sum to 1 at every sample.

    Wedge k is centered at ``period * k / n_wedges``, with transitions
    spanning the full wedge width (each window overlaps its two neighbours,
    reaching 1 only at its center line).

    theta values are taken modulo ``period`` (pi for orientation bands that
    identify opposite directions, 2*pi for one-sided wedges).
    """
    width = period / n_wedges
    th = np.mod(theta, period)
    # ramp u_k rises over the wedge-wide window around boundary b_k = (k - 1/2) * width
    ramps = []
    for k in range(n_wedges + 1):
        b = (k - 0.5) * width
        # periodic signed offset from the boundary
        off = np.mod(th - b + period / 2.0, period) - period / 2.0
        ramps.append(smoothstep((off + width / 2.0) / width))
    wins = []
    for k in range(n_wedges):
        a = np.sin(0.5 * np.pi * ramps[k]) * np.cos(0.5 * np.pi * ramps[k + 1])
        wins.append(a)
    return wins


def crop_spectrum(spec: np.ndarray, new_shape: tuple[int, int]) -> np.ndarray:
    """Keep the centered (low-frequency) block of an unshifted spectrum."""
    shifted = np.fft.fftshift(spec)
    h, w = spec.shape
    h2, w2 = new_shape
    r0 = h // 2 - h2 // 2
    c0 = w // 2 - w2 // 2
    return np.fft.ifftshift(shifted[r0 : r0 + h2, c0 : c0 + w2])


def pad_spectrum(spec: np.ndarray, new_shape: tuple[int, int]) -> np.ndarray:
    """Inverse of crop_spectrum: zero-pad back to the larger grid."""
    h2, w2 = spec.shape
    h, w = new_shape
    out = np.zeros(new_shape, dtype=spec.dtype)
    shifted = np.fft.fftshift(spec)
    r0 = h // 2 - h2 // 2
    c0 = w // 2 - w2 // 2
    out[r0 : r0 + h2, c0 : c0 + w2] = shifted
    return np.fft.ifftshift(out)
