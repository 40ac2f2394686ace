"""Histograms, histogram distances, and per-image descriptor aggregation.

A descriptor for one image is an ordered sequence of named normalized
histograms (one per subband or pattern family). Two descriptors are
comparable only when they come from the same method and share the same
bin layout; the layout is calibrated once per corpus so that bin edges
are identical across images.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

KLD_EPSILON = 1e-10
DEFAULT_BINS = 32
LAYOUT_VERSION = 1


class LayoutMismatchError(ValueError):
    """Histograms or descriptor sets with incompatible bin layouts."""


@dataclass(frozen=True)
class Histogram:
    """Normalized histogram plus the bin-edge record it was built with."""

    bins: np.ndarray
    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "bins", np.asarray(self.bins, dtype=np.float64))
        if self.bins.size < 2:
            raise ValueError("histogram needs at least 2 bins")

    @property
    def nbins(self) -> int:
        return int(self.bins.size)

    def compatible_with(self, other: "Histogram") -> bool:
        return self.nbins == other.nbins and self.lo == other.lo and self.hi == other.hi


@dataclass(frozen=True)
class BinLayout:
    """Per-subband value ranges and bin count, shared across a corpus."""

    method: str
    ranges: tuple[tuple[str, float, float], ...]  # (subband name, lo, hi)
    nbins: int = DEFAULT_BINS
    version: int = LAYOUT_VERSION


@dataclass
class DescriptorSet:
    """Ordered named histograms for one image, tagged with the method."""

    method: str
    names: list[str]
    histograms: list[Histogram]

    def comparable_with(self, other: "DescriptorSet") -> bool:
        return (
            self.method == other.method
            and len(self.histograms) == len(other.histograms)
            and all(a.compatible_with(b) for a, b in zip(self.histograms, other.histograms))
        )

    def concatenated(self) -> np.ndarray:
        return np.concatenate([h.bins for h in self.histograms])


def coeff_histogram(values: np.ndarray, lo: float, hi: float, nbins: int = DEFAULT_BINS) -> Histogram:
    """Clip values into [lo, hi] and bin them uniformly (normalized to sum 1).

    Bins are left-inclusive with the last bin closed on the right, so a
    value on an interior edge lands in the bin whose left edge it is.
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size == 0:
        raise ValueError("cannot build a histogram from an empty value sequence")
    if not hi > lo:
        raise ValueError(f"bin range must be positive, got [{lo}, {hi}]")
    if nbins < 2:
        raise ValueError("need at least 2 bins")
    counts, _ = np.histogram(np.clip(values, lo, hi), bins=nbins, range=(lo, hi))
    return Histogram(bins=counts / values.size, lo=lo, hi=hi)


def squared_chord(h1: Histogram | np.ndarray, h2: Histogram | np.ndarray) -> float:
    """d_SC = sum_i (sqrt(h1_i) - sqrt(h2_i))^2; bounded by [0, 2] for normalized input."""
    a, b = _paired_bins(h1, h2)
    d = np.sqrt(a) - np.sqrt(b)
    return float(np.sum(d * d))


def kld(h1: Histogram | np.ndarray, h2: Histogram | np.ndarray, eps: float = KLD_EPSILON) -> float:
    """Symmetrized Kullback-Leibler divergence over epsilon-smoothed bins."""
    a, b = _paired_bins(h1, h2)
    p = a + eps
    p /= p.sum()
    q = b + eps
    q /= q.sum()
    return float(np.sum((p - q) * np.log(p / q)))


DISTANCES = {"scd": squared_chord, "kld": kld}


def _paired_bins(h1, h2) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(h1, Histogram) and isinstance(h2, Histogram):
        if not h1.compatible_with(h2):
            raise LayoutMismatchError("histograms have different bin layouts")
        return h1.bins.copy(), h2.bins.copy()
    a = np.asarray(h1, dtype=np.float64)
    b = np.asarray(h2, dtype=np.float64)
    if a.shape != b.shape:
        raise LayoutMismatchError("histograms have different bin counts")
    return a.copy(), b.copy()


def aggregate_distance(
    a: DescriptorSet,
    b: DescriptorSet,
    distance: str = "scd",
    drop_last: bool = False,
) -> float:
    """Sum the per-histogram distance over all histogram pairs.

    ``drop_last`` excludes the final histogram from the sum (strict-literal
    mode for the J-1 upper summation limit; off by default).
    """
    if a.method != b.method:
        raise LayoutMismatchError(f"descriptor methods differ: {a.method} vs {b.method}")
    if not a.comparable_with(b):
        raise LayoutMismatchError("descriptor sets are not comparable")
    fn = DISTANCES[distance]
    pairs = list(zip(a.histograms, b.histograms))
    if drop_last:
        pairs = pairs[:-1]
    return float(sum(fn(x, y) for x, y in pairs))


def to_similarity(distance: float) -> float:
    """Map a nonnegative distance to a similarity in (0, 1]: s = 1 / (1 + D)."""
    if distance < 0:
        raise ValueError("distance must be nonnegative")
    return 1.0 / (1.0 + distance)


# ---------------------------------------------------------------------------
# serialization

def descriptor_to_dict(ds: DescriptorSet) -> dict:
    return {
        "method": ds.method,
        "layout_version": LAYOUT_VERSION,
        "histograms": [
            {"name": n, "lo": h.lo, "hi": h.hi, "bins": h.bins.tolist()}
            for n, h in zip(ds.names, ds.histograms)
        ],
    }


def descriptor_from_dict(d: dict) -> DescriptorSet:
    names = [h["name"] for h in d["histograms"]]
    hists = [Histogram(bins=np.array(h["bins"]), lo=h["lo"], hi=h["hi"]) for h in d["histograms"]]
    return DescriptorSet(method=d["method"], names=names, histograms=hists)


def save_descriptors(sets: list[DescriptorSet], path: str | Path) -> None:
    payload = {"layout_version": LAYOUT_VERSION, "descriptors": [descriptor_to_dict(d) for d in sets]}
    Path(path).write_text(json.dumps(payload), encoding="utf-8")


def load_descriptors(path: str | Path) -> list[DescriptorSet]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return [descriptor_from_dict(d) for d in payload["descriptors"]]
