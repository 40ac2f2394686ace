"""Curvelet-style directional multiscale transform via FFT frequency tiling.

The frequency plane is tiled into a coarse isotropic (wavelet) band plus J
annular rings, ring j split into K(j) angular wedges. Scale count and
orientation counts follow

    J = ceil(log2(min(N1, N2)) - 3)
    K(j) = 16 * 2^ceil((j-1)/2)

Wedge windows are smooth raised-cosine overlaps whose squares sum to 1 at
every frequency sample, so the transform is a numerically tight frame:
forward = IFFT of the windowed spectrum per wedge, inverse = windowed
re-synthesis. Coefficients are kept at full image resolution (no wedge
wrapping), trading memory for an exact and simple inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .windows import angular_windows, fall, freq_grids, rise


def num_scales(h: int, w: int) -> int:
    """J = ceil(log2(min(h, w)) - 3); requires min(h, w) >= 16."""
    if min(h, w) < 16:
        raise ValueError(f"image {h}x{w} too small for a curvelet tiling (min side >= 16)")
    return math.ceil(math.log2(min(h, w)) - 3)


def num_orientations(j: int) -> int:
    """K(j) = 16 * 2^ceil((j-1)/2) wedges on ring j (1-based, finest = J)."""
    if j < 1:
        raise ValueError("scale index must be >= 1")
    return 16 * 2 ** math.ceil((j - 1) / 2)


@dataclass(frozen=True)
class CurveletLayout:
    """Frequency-support geometry needed to invert a transform."""

    shape: tuple[int, int]
    scales: int

    def wedge_counts(self) -> list[int]:
        return [num_orientations(j) for j in range(1, self.scales + 1)]

    def subband_count(self) -> int:
        return 1 + sum(self.wedge_counts())


@dataclass
class CurveletCoeffs:
    """Coarse band plus per-(scale, wedge) complex coefficient rasters."""

    coarse: np.ndarray
    wedges: list[list[np.ndarray]]  # wedges[j-1][k], j = 1 (coarsest ring) .. J
    layout: CurveletLayout

    def all_subbands(self) -> list[np.ndarray]:
        out = [self.coarse]
        for ring in self.wedges:
            out.extend(ring)
        return out


@lru_cache(maxsize=4)
def _tiling(h: int, w: int, j_scales: int) -> tuple[np.ndarray, list[list[np.ndarray]]]:
    """Coarse window and per-ring wedge windows on the (h, w) frequency grid.

    Ring boundaries sit at sup-norm radius 2^-(J-j); each boundary transition
    occupies the half-octave below it, giving exact telescoping of squared
    windows. The finest ring extends to the Nyquist corners.
    """
    fy, fx = freq_grids(h, w)
    rho = np.maximum(np.abs(fy), np.abs(fx))
    theta = np.arctan2(fy, fx)

    bounds = [2.0 ** -(j_scales - j) for j in range(j_scales)]  # B_0 .. B_{J-1}
    rises = [rise(rho, b / 2.0, b) for b in bounds]

    coarse = fall(rho, bounds[0] / 2.0, bounds[0])
    rings: list[list[np.ndarray]] = []
    for j in range(1, j_scales + 1):
        radial = rises[j - 1].copy()
        if j < j_scales:
            radial *= fall(rho, bounds[j] / 2.0, bounds[j])
        ang = angular_windows(theta, num_orientations(j), 2.0 * np.pi)
        rings.append([radial * a for a in ang])
    return coarse, rings


def partition_of_unity(h: int, w: int) -> np.ndarray:
    """Sum of squared tiling windows at every frequency sample (should be 1)."""
    coarse, rings = _tiling(h, w, num_scales(h, w))
    total = coarse * coarse
    for ring in rings:
        for win in ring:
            total += win * win
    return total


def forward(img: np.ndarray) -> CurveletCoeffs:
    """Directional multiscale analysis of a real image."""
    img = np.asarray(img, dtype=np.float64)
    h, w = img.shape
    layout = CurveletLayout(shape=(h, w), scales=num_scales(h, w))
    coarse_win, rings = _tiling(h, w, layout.scales)

    spec = np.fft.fft2(img)
    coarse = np.fft.ifft2(spec * coarse_win)
    wedges = [[np.fft.ifft2(spec * win) for win in ring] for ring in rings]
    return CurveletCoeffs(coarse=coarse, wedges=wedges, layout=layout)


def inverse(coeffs: CurveletCoeffs) -> np.ndarray:
    """Synthesize the image back from its coefficients (tight-frame adjoint)."""
    h, w = coeffs.layout.shape
    if coeffs.layout.scales != num_scales(h, w) or [
        len(ring) for ring in coeffs.wedges
    ] != coeffs.layout.wedge_counts():
        raise ValueError("corrupted layout record: wedge structure mismatch")
    coarse_win, rings = _tiling(h, w, coeffs.layout.scales)

    spec = np.fft.fft2(coeffs.coarse) * coarse_win
    for ring, wins in zip(coeffs.wedges, rings):
        for cf, win in zip(ring, wins):
            spec += np.fft.fft2(cf) * win
    return np.fft.ifft2(spec).real


def coefficient_energy(coeffs: CurveletCoeffs) -> float:
    """Total squared coefficient magnitude; equals image energy (tight frame)."""
    return float(sum(np.sum(np.abs(sb) ** 2) for sb in coeffs.all_subbands()))
