"""Completed local binary patterns (sign, magnitude, center components).

Codes are computed on the interior region where the full radius-R neighbor
ring fits (no padding). Neighbor values at non-integer positions are
bilinearly interpolated. Histograms use the rotation-invariant uniform
(riu2) mapping, giving P+2 bins for S and M plus 2 bins for C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ClbpConfig:
    neighbors: int = 20
    radius: float = 3.0

    def __post_init__(self):
        if self.neighbors < 4:
            raise ValueError("neighbors must be >= 4")
        if self.radius < 1:
            raise ValueError("radius must be >= 1")

    @property
    def histogram_length(self) -> int:
        # S (P+2) + M (P+2) + C (2)
        return 2 * self.neighbors + 6


@dataclass
class ClbpMaps:
    c_map: np.ndarray  # binary
    s_riu: np.ndarray  # riu2 class indices, 0 .. P+1
    m_riu: np.ndarray
    config: ClbpConfig


def _neighbor_stack(img: np.ndarray, cfg: ClbpConfig) -> tuple[np.ndarray, np.ndarray]:
    """Interior center values and a (P, h', w') stack of ring neighbor values."""
    h, w = img.shape
    margin = math.ceil(cfg.radius)
    if h <= 2 * margin or w <= 2 * margin:
        raise ValueError(f"image {h}x{w} too small for radius {cfg.radius}")
    hh, ww = h - 2 * margin, w - 2 * margin
    center = img[margin : margin + hh, margin : margin + ww]

    def block(oy: int, ox: int) -> np.ndarray:
        return img[margin + oy : margin + oy + hh, margin + ox : margin + ox + ww]

    stack = np.empty((cfg.neighbors, hh, ww))
    for p in range(cfg.neighbors):
        alpha = 2.0 * np.pi * p / cfg.neighbors
        dy = -cfg.radius * math.sin(alpha)
        dx = cfg.radius * math.cos(alpha)
        y0, x0 = math.floor(dy), math.floor(dx)
        ty, tx = dy - y0, dx - x0
        # incremental bilinear form: exact on constant and affine images
        val = block(y0, x0).copy()
        if tx > 0.0:
            val += tx * (block(y0, x0 + 1) - block(y0, x0))
        if ty > 0.0:
            val += ty * (block(y0 + 1, x0) - block(y0, x0))
        if ty > 0.0 and tx > 0.0:
            val += (ty * tx) * (
                block(y0, x0) - block(y0, x0 + 1) - block(y0 + 1, x0) + block(y0 + 1, x0 + 1)
            )
        stack[p] = val
    return center, stack


def _riu2_from_bits(bits: np.ndarray) -> np.ndarray:
    """Map a (P, h, w) binary stack to riu2 class indices.

    Uniform patterns (at most 2 circular 0/1 transitions) map to their
    bit count 0..P; all others map to P+1.
    """
    p = bits.shape[0]
    transitions = np.zeros(bits.shape[1:], dtype=np.int64)
    for i in range(p):
        transitions += bits[i] != bits[(i + 1) % p]
    ones = bits.sum(axis=0)
    return np.where(transitions <= 2, ones, p + 1)


def clbp_codes(img: np.ndarray, cfg: ClbpConfig = ClbpConfig()) -> ClbpMaps:
    """Compute the C/S/M component maps of an image.

    S thresholds the sign of (center - neighbor) with ties coding 1; M
    thresholds |center - neighbor| against the image-wide mean absolute
    difference (ties code 1; an all-zero difference image codes 0); C
    thresholds the center against the global mean intensity.
    """
    img = np.asarray(img, dtype=np.float64)
    center, stack = _neighbor_stack(img, cfg)

    diffs = center[None] - stack
    s_bits = diffs >= 0.0

    mags = np.abs(diffs)
    m_thresh = mags.mean()
    if m_thresh > 0.0:
        m_bits = mags >= m_thresh
    else:
        m_bits = np.zeros_like(mags, dtype=bool)

    c_map = (center >= img.mean()).astype(np.int64)
    return ClbpMaps(
        c_map=c_map,
        s_riu=_riu2_from_bits(s_bits),
        m_riu=_riu2_from_bits(m_bits),
        config=cfg,
    )


def clbp_histogram(maps: ClbpMaps, cfg: ClbpConfig | None = None) -> np.ndarray:
    """Concatenated [S | M | C] histogram; each segment is normalized to sum 1."""
    cfg = cfg or maps.config
    nbins = cfg.neighbors + 2
    s_hist = np.bincount(maps.s_riu.ravel(), minlength=nbins).astype(np.float64)
    m_hist = np.bincount(maps.m_riu.ravel(), minlength=nbins).astype(np.float64)
    c_hist = np.bincount(maps.c_map.ravel(), minlength=2).astype(np.float64)
    return np.concatenate([s_hist / s_hist.sum(), m_hist / m_hist.sum(), c_hist / c_hist.sum()])


def clbp_component_histograms(maps: ClbpMaps) -> list[np.ndarray]:
    """The three normalized component histograms (S, M, C) separately."""
    full = clbp_histogram(maps)
    nbins = maps.config.neighbors + 2
    return [full[:nbins], full[nbins : 2 * nbins], full[2 * nbins :]]


def clbp_descriptor(img: np.ndarray, cfg: ClbpConfig = ClbpConfig()) -> np.ndarray:
    """Convenience: codes + concatenated histogram in one call."""
    return clbp_histogram(clbp_codes(img, cfg))
