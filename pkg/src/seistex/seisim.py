"""SeiSIM benchmark similarity.

Combines a structural texture similarity computed from steerable-pyramid
subband statistics (means, variances, first-lag autocorrelations) with a
geological similarity derived from trace-to-trace discontinuity maps:

    Q_STSIM1 = mean over subbands of l^(1/4) c^(1/4) a_h^(1/4) a_v^(1/4)
    Q_DM     = sqrt(a_h_dm) * sqrt(a_v_dm)
    SeiSIM   = sqrt(Q_STSIM1 * Q_DM)

Unlike the histogram-based attributes, this compares statistics directly
between the two images.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import uniform_filter1d

from .steerable import SteerableConfig, build_pyramid

C0 = 1e-4  # luminance stabilizer
C1 = 1e-4  # contrast stabilizer
DM_WINDOW = 5  # height of the vertical correlation windows


@dataclass(frozen=True)
class SubbandStats:
    mean: float
    var: float
    rho_h: float  # first-lag horizontal autocorrelation coefficient
    rho_v: float


def _lag1_corr(a: np.ndarray, b: np.ndarray) -> float:
    """Pearson correlation of two equally-shaped slices (population moments)."""
    am, bm = a.mean(), b.mean()
    av = a - am
    bv = b - bm
    denom = np.sqrt(np.sum(av * av) * np.sum(bv * bv))
    if denom == 0.0:
        return 0.0
    return float(np.sum(av * bv) / denom)


def subband_stats(band: np.ndarray) -> SubbandStats:
    """Mean, variance, and first-lag h/v autocorrelations of a subband."""
    band = np.asarray(band, dtype=np.float64)
    if band.shape[0] < 2 or band.shape[1] < 2:
        raise ValueError("subband must be at least 2x2")
    var = float(band.var())
    if var == 0.0:
        rho_h = rho_v = 0.0
    else:
        rho_h = _lag1_corr(band[:, :-1], band[:, 1:])
        rho_v = _lag1_corr(band[:-1, :], band[1:, :])
    return SubbandStats(mean=float(band.mean()), var=var, rho_h=rho_h, rho_v=rho_v)


def stsim1_pair(x: SubbandStats, y: SubbandStats) -> float:
    """STSIM-1 score of one subband pair: product of fourth roots of the
    luminance, contrast, and h/v autocorrelation similarity terms."""
    l = (2.0 * x.mean * y.mean + C0) / (x.mean**2 + y.mean**2 + C0)
    sx, sy = np.sqrt(x.var), np.sqrt(y.var)
    c = (2.0 * sx * sy + C1) / (x.var + y.var + C1)
    a_h = 1.0 - abs(x.rho_h - y.rho_h) / 2.0
    a_v = 1.0 - abs(x.rho_v - y.rho_v) / 2.0
    # l can be slightly negative for opposite-signed means; clamp before rooting
    terms = np.clip([l, c, a_h, a_v], 0.0, None)
    return float(np.prod(terms**0.25))


def image_subband_stats(
    img: np.ndarray, cfg: SteerableConfig = SteerableConfig()
) -> list[SubbandStats]:
    """Stats for every subband of the image's steerable-pyramid decomposition."""
    pyr = build_pyramid(np.asarray(img, dtype=np.float64), cfg)
    return [subband_stats(sb) for sb in pyr.all_subbands()]


def stsim1_image(a: np.ndarray, b: np.ndarray, cfg: SteerableConfig = SteerableConfig()) -> float:
    """Mean STSIM-1 over corresponding pyramid subbands of the two images."""
    if a.shape != b.shape:
        raise ValueError("images must have equal dimensions")
    sa = image_subband_stats(a, cfg)
    sb = image_subband_stats(b, cfg)
    return stsim1_from_stats(sa, sb)


def stsim1_from_stats(sa: list[SubbandStats], sb: list[SubbandStats]) -> float:
    if len(sa) != len(sb):
        raise ValueError("subband stat sequences differ in length")
    return float(np.mean([stsim1_pair(x, y) for x, y in zip(sa, sb)]))


def discontinuity_map(img: np.ndarray) -> np.ndarray:
    """Per-pixel lateral discontinuity strength in [0, 1].

    1 minus the normalized cross-correlation of the two vertical windows
    (height 5) centered at each pixel in adjacent columns. Identical
    constant windows count as perfectly continuous.
    """
    img = np.asarray(img, dtype=np.float64)
    h, w = img.shape
    if h < DM_WINDOW or w < 2:
        raise ValueError(f"image {h}x{w} too small for a discontinuity map")
    half = DM_WINDOW // 2

    mean = uniform_filter1d(img, DM_WINDOW, axis=0)
    mean_sq = uniform_filter1d(img * img, DM_WINDOW, axis=0)
    var = np.maximum(mean_sq - mean * mean, 0.0)

    prod = uniform_filter1d(img[:, :-1] * img[:, 1:], DM_WINDOW, axis=0)
    cov = prod - mean[:, :-1] * mean[:, 1:]
    denom = np.sqrt(var[:, :-1] * var[:, 1:])

    with np.errstate(invalid="ignore", divide="ignore"):
        ncc = np.where(denom > 0.0, cov / np.where(denom > 0.0, denom, 1.0), 0.0)

    # degenerate windows: flat on both sides -> continuous iff equal
    flat = (var[:, :-1] == 0.0) & (var[:, 1:] == 0.0)
    equal = np.isclose(mean[:, :-1], mean[:, 1:])
    ncc = np.where(flat, np.where(equal, 1.0, 0.0), ncc)

    dm = np.clip(1.0 - ncc, 0.0, 1.0)
    return dm[half : h - half, :]


def dm_similarity(d1: np.ndarray, d2: np.ndarray) -> float:
    """Geometric mean of the h/v autocorrelation similarity of two maps."""
    if d1.shape != d2.shape:
        raise ValueError("discontinuity maps must have equal dimensions")
    s1, s2 = subband_stats(d1), subband_stats(d2)
    return dm_similarity_from_stats(s1, s2)


def dm_similarity_from_stats(s1: SubbandStats, s2: SubbandStats) -> float:
    a_h = 1.0 - abs(s1.rho_h - s2.rho_h) / 2.0
    a_v = 1.0 - abs(s1.rho_v - s2.rho_v) / 2.0
    return float(np.sqrt(max(a_h, 0.0) * max(a_v, 0.0)))


def seisim(a: np.ndarray, b: np.ndarray, cfg: SteerableConfig = SteerableConfig()) -> float:
    """Geometric mean of the STSIM-1 texture score and the DM geological score."""
    if a.shape != b.shape:
        raise ValueError("images must have equal dimensions")
    q_texture = stsim1_image(a, b, cfg)
    q_dm = dm_similarity(discontinuity_map(a), discontinuity_map(b))
    return float(np.sqrt(q_texture * q_dm))
