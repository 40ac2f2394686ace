"""Local radius index descriptors (LRI-A and LRI-D).

An edge sits between two consecutive pixels along a scan direction when
the absolute intensity step exceeds T = sigma/2 (sigma of the whole
image, so T = 0.5 after per-image normalization).

LRI-D: for every pixel, the signed number of steps (<= K) to the nearest
edge along the direction; 0 if none is reached. The sign is the sign of
the intensity step at that edge.

LRI-A: evaluated at edge pixels only; the signed run length (<= K) of the
smooth segment starting just past the edge. Images with no edges yield
the degenerate all-mass-in-bin-0 histogram.

Eight directions are scanned with unit chessboard steps; each direction
yields a (2K+1)-bin histogram over indices -K..K, and the A and D
histogram groups are concatenated (length 2 * 8 * (2K+1)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# (dy, dx) unit steps; rows grow downward, so N is (-1, 0)
DIRECTIONS: tuple[tuple[int, int], ...] = (
    (0, 1),    # E
    (-1, 1),   # NE
    (-1, 0),   # N
    (-1, -1),  # NW
    (0, -1),   # W
    (1, -1),   # SW
    (1, 0),    # S
    (1, 1),    # SE
)

DIRECTION_NAMES = ("E", "NE", "N", "NW", "W", "SW", "S", "SE")


@dataclass(frozen=True)
class LriConfig:
    range_k: int = 3
    threshold_factor: float = 0.5  # T = factor * sigma

    def __post_init__(self):
        if self.range_k < 1:
            raise ValueError("range_k must be >= 1")

    @property
    def bins_per_direction(self) -> int:
        return 2 * self.range_k + 1

    @property
    def descriptor_length(self) -> int:
        return 2 * len(DIRECTIONS) * self.bins_per_direction


@dataclass
class LriDescriptor:
    a_hists: list[np.ndarray]  # one per direction, each sums to 1
    d_hists: list[np.ndarray]
    config: LriConfig

    def concatenated(self) -> np.ndarray:
        return np.concatenate(self.a_hists + self.d_hists)


def _shifted(img: np.ndarray, steps: int, dy: int, dx: int) -> tuple[np.ndarray, np.ndarray]:
    """Image values at p + steps*(dy, dx), aligned with p; plus validity mask."""
    h, w = img.shape
    oy, ox = steps * dy, steps * dx
    out = np.zeros((h, w))
    valid = np.zeros((h, w), dtype=bool)
    ys = slice(max(0, -oy), min(h, h - oy))
    xs = slice(max(0, -ox), min(w, w - ox))
    out[ys, xs] = img[max(0, oy) : min(h, h + oy), max(0, ox) : min(w, w + ox)]
    valid[ys, xs] = True
    return out, valid


def _index_histogram(indices: np.ndarray, mask: np.ndarray, k: int) -> np.ndarray:
    """Normalized (2K+1)-bin histogram of signed indices drawn from mask."""
    hist = np.zeros(2 * k + 1)
    if not mask.any():
        hist[k] = 1.0  # degenerate rule: all mass in bin 0
        return hist
    vals = indices[mask] + k
    hist = np.bincount(vals.astype(np.int64), minlength=2 * k + 1).astype(np.float64)
    return hist / hist.sum()


def lri_indices(img: np.ndarray, cfg: LriConfig = LriConfig()) -> LriDescriptor:
    img = np.asarray(img, dtype=np.float64)
    h, w = img.shape
    k = cfg.range_k
    if min(h, w) < 2 * k + 1:
        raise ValueError(f"image {h}x{w} too small for LRI range {k}")
    threshold = cfg.threshold_factor * img.std()

    a_hists: list[np.ndarray] = []
    d_hists: list[np.ndarray] = []
    for dy, dx in DIRECTIONS:
        # step m goes from pixel p+(m-1)d to p+m*d
        steps = []
        for m in range(1, k + 2):
            prev, pv = _shifted(img, m - 1, dy, dx)
            nxt, nv = _shifted(img, m, dy, dx)
            diff = nxt - prev
            valid = pv & nv
            is_edge = valid & (np.abs(diff) > threshold)
            steps.append((diff, valid, is_edge))

        # LRI-D: first edge within K steps
        d_idx = np.zeros((h, w), dtype=np.int64)
        found = np.zeros((h, w), dtype=bool)
        for m in range(1, k + 1):
            diff, _, is_edge = steps[m - 1]
            hit = is_edge & ~found
            d_idx[hit] = m * np.sign(diff[hit]).astype(np.int64)
            found |= hit
        d_hists.append(_index_histogram(d_idx, np.ones((h, w), dtype=bool), k))

        # LRI-A: at edge pixels (edge on step 1), run length of the smooth
        # segment starting at p+d, capped at K; ends at the next edge or
        # the image border.
        diff1, _, edge1 = steps[0]
        run = np.ones((h, w), dtype=np.int64)
        alive = edge1.copy()
        for m in range(2, k + 1):
            _, valid_m, edge_m = steps[m - 1]
            alive = alive & valid_m & ~edge_m
            run[alive] += 1
        sign1 = np.sign(diff1).astype(np.int64)
        a_idx = np.clip(run, None, k) * sign1
        a_hists.append(_index_histogram(a_idx, edge1, k))

    return LriDescriptor(a_hists=a_hists, d_hists=d_hists, config=cfg)


def lri_descriptor(img: np.ndarray, cfg: LriConfig = LriConfig()) -> np.ndarray:
    """Concatenated LRI-A + LRI-D histogram vector (112 values for K=3)."""
    return lri_indices(img, cfg).concatenated()
