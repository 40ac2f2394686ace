"""Steerable-pyramid decomposition with oriented bandpass subbands.

Frequency-domain construction: a highpass/lowpass split at the Nyquist
octave, then at each scale the current lowpass spectrum is split into N
oriented bandpass subbands (raised-cosine radial window times equiangular
windows over orientation, period pi) and a residual lowpass which is
subsampled by 2 (spectrum cropping) before recursing. Window squares sum
to 1 per level, so reconstruction is numerically exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .windows import angular_windows, crop_spectrum, fall, freq_grids, pad_spectrum, rise


@dataclass(frozen=True)
class SteerableConfig:
    scales: int = 4
    orientations: int = 8

    def __post_init__(self):
        if self.scales < 1:
            raise ValueError("scales must be >= 1")
        if self.orientations < 2:
            raise ValueError("orientations must be >= 2")


@dataclass
class PyramidDecomposition:
    """highpass + scales x orientations bandpass subbands + lowpass residual."""

    highpass: np.ndarray
    bands: list[list[np.ndarray]]  # bands[scale][orientation], scale 0 = finest
    lowpass: np.ndarray
    shape: tuple[int, int] = field(default=(0, 0))

    def subband_count(self) -> int:
        return 2 + sum(len(row) for row in self.bands)

    def all_subbands(self) -> list[np.ndarray]:
        out = [self.highpass]
        for row in self.bands:
            out.extend(row)
        out.append(self.lowpass)
        return out


def _level_windows(h: int, w: int, n_orient: int):
    """Radial band/lowpass windows plus angular wedge windows for one level."""
    fy, fx = freq_grids(h, w)
    rho = np.hypot(fy, fx)
    theta = np.arctan2(fy, fx)
    band_rad = rise(rho, 0.25, 0.5)
    low_rad = fall(rho, 0.25, 0.5)
    ang = angular_windows(theta, n_orient, np.pi)
    return band_rad, low_rad, ang


def _check_size(h: int, w: int, scales: int) -> None:
    if min(h, w) / 2 ** (scales - 1) < 8:
        raise ValueError(
            f"image {h}x{w} too small for {scales} pyramid scales "
            f"(need min(H,W)/2^(K-1) >= 8)"
        )


def build_pyramid(img: np.ndarray, cfg: SteerableConfig = SteerableConfig()) -> PyramidDecomposition:
    """Decompose an image into highpass, K*N oriented bandpass, and lowpass subbands.

    Band at scale s (1-based) lives on a ceil(H/2^(s-1)) x ceil(W/2^(s-1))
    grid; the lowpass residual is halved once more.
    """
    img = np.asarray(img, dtype=np.float64)
    h, w = img.shape
    _check_size(h, w, cfg.scales)

    spec = np.fft.fft2(img)
    fy, fx = freq_grids(h, w)
    rho = np.hypot(fy, fx)
    hi0 = rise(rho, 0.5, 1.0)
    lo0 = fall(rho, 0.5, 1.0)

    highpass = np.fft.ifft2(spec * hi0).real
    lodft = spec * lo0

    bands: list[list[np.ndarray]] = []
    for _ in range(cfg.scales):
        hh, ww = lodft.shape
        band_rad, low_rad, ang = _level_windows(hh, ww, cfg.orientations)
        row = [np.fft.ifft2(lodft * band_rad * a).real for a in ang]
        bands.append(row)
        lodft = crop_spectrum(lodft * low_rad, (math.ceil(hh / 2), math.ceil(ww / 2)))

    lowpass = np.fft.ifft2(lodft).real
    return PyramidDecomposition(highpass=highpass, bands=bands, lowpass=lowpass, shape=(h, w))


def reconstruct(pyr: PyramidDecomposition, cfg: SteerableConfig = SteerableConfig()) -> np.ndarray:
    """Invert build_pyramid. Relative L2 error is at machine precision."""
    if len(pyr.bands) != cfg.scales or any(len(r) != cfg.orientations for r in pyr.bands):
        raise ValueError("pyramid shape does not match configuration")
    h, w = pyr.shape
    if pyr.highpass.shape != (h, w):
        raise ValueError("highpass subband does not match recorded image shape")

    lodft = np.fft.fft2(pyr.lowpass.astype(np.complex128))
    for row in reversed(pyr.bands):
        hh, ww = row[0].shape
        band_rad, low_rad, ang = _level_windows(hh, ww, cfg.orientations)
        acc = pad_spectrum(lodft, (hh, ww)) * low_rad
        for band, a in zip(row, ang):
            acc += np.fft.fft2(band) * band_rad * a
        lodft = acc

    fy, fx = freq_grids(h, w)
    rho = np.hypot(fy, fx)
    spec = lodft * fall(rho, 0.5, 1.0) + np.fft.fft2(pyr.highpass) * rise(rho, 0.5, 1.0)
    return np.fft.ifft2(spec).real


def pyramid_energy(pyr: PyramidDecomposition) -> float:
    """Total subband energy with downsampling compensation.

    Each subband's energy is weighted by its pixel count relative to the
    original grid, which makes the sum equal the input image energy.
    """
    h, w = pyr.shape
    total = 0.0
    for sb in pyr.all_subbands():
        total += (sb.size / (h * w)) * float(np.sum(sb * sb))
    return total
