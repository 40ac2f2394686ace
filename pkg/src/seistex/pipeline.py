"""Descriptor extraction pipeline: method dispatch and layout calibration.

Histogram-based methods (sp, ct, clbp, lri) produce a DescriptorSet per
image. For the transform methods the bin layout must be calibrated over
the corpus first (per-subband value range = max absolute value observed),
so extraction over a corpus makes two passes over the images. CLBP and
LRI histograms have intrinsic bin layouts and need no calibration.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import clbp, curvelet, lri
from .descriptor import BinLayout, DescriptorSet, Histogram, coeff_histogram
from .imagecore import load_image, normalize
from .steerable import SteerableConfig, build_pyramid

HISTOGRAM_METHODS = ("sp", "ct", "clbp", "lri")
ALL_METHODS = HISTOGRAM_METHODS + ("seisim",)


def _map(fn, items, workers: int = 1):
    if workers <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def load_normalized(path) -> np.ndarray:
    return normalize(load_image(path))


# ---------------------------------------------------------------------------
# per-method subband value extraction

def sp_subband_values(img: np.ndarray, cfg: SteerableConfig = SteerableConfig()) -> list[tuple[str, np.ndarray]]:
    pyr = build_pyramid(img, cfg)
    out = [("highpass", pyr.highpass.ravel())]
    for s, row in enumerate(pyr.bands, start=1):
        for b, band in enumerate(row):
            out.append((f"s{s}b{b}", band.ravel()))
    out.append(("lowpass", pyr.lowpass.ravel()))
    return out


def ct_subband_values(img: np.ndarray) -> list[tuple[str, np.ndarray]]:
    # histograms are built from coefficient magnitudes
    coeffs = curvelet.forward(img)
    out = [("coarse", np.abs(coeffs.coarse).ravel())]
    for j, ring in enumerate(coeffs.wedges, start=1):
        for k, wedge in enumerate(ring):
            out.append((f"j{j}w{k}", np.abs(wedge).ravel()))
    return out


_SUBBAND_FNS = {"sp": sp_subband_values, "ct": ct_subband_values}


def _subband_max(args) -> np.ndarray:
    method, path = args
    img = load_normalized(path)
    vals = _SUBBAND_FNS[method](img)
    return np.array([np.max(np.abs(v)) if v.size else 0.0 for _, v in vals])


def _layout_from_peaks(names, peak, method: str, nbins: int) -> BinLayout:
    peak = np.where(np.asarray(peak) > 0.0, peak, 1.0)  # guard all-zero subbands
    if method == "sp":
        ranges = tuple((n, -float(p), float(p)) for n, p in zip(names, peak))
    else:  # ct magnitudes are nonnegative
        ranges = tuple((n, 0.0, float(p)) for n, p in zip(names, peak))
    return BinLayout(method=method, ranges=ranges, nbins=nbins)


def calibrate_layout(paths, method: str, nbins: int, workers: int = 1) -> BinLayout:
    """Pass over the corpus collecting per-subband value ranges."""
    maxes = _map(_subband_max, [(method, p) for p in paths], workers)
    names = [n for n, _ in _SUBBAND_FNS[method](load_normalized(paths[0]))]
    return _layout_from_peaks(names, np.maximum.reduce(maxes), method, nbins)


def calibrate_layout_images(imgs, method: str, nbins: int) -> BinLayout:
    """Layout calibration from in-memory normalized images."""
    peak = None
    names = None
    for img in imgs:
        vals = _SUBBAND_FNS[method](img)
        names = [n for n, _ in vals]
        m = np.array([np.max(np.abs(v)) if v.size else 0.0 for _, v in vals])
        peak = m if peak is None else np.maximum(peak, m)
    return _layout_from_peaks(names, peak, method, nbins)


def _extract_one(args) -> DescriptorSet:
    method, path, layout, clbp_cfg, lri_cfg = args
    img = load_normalized(path)
    return extract_descriptor(img, method, layout=layout, clbp_cfg=clbp_cfg, lri_cfg=lri_cfg)


def extract_descriptor(
    img: np.ndarray,
    method: str,
    layout: BinLayout | None = None,
    clbp_cfg: clbp.ClbpConfig | None = None,
    lri_cfg: lri.LriConfig | None = None,
) -> DescriptorSet:
    """Descriptor for one already-normalized image."""
    if method in ("sp", "ct"):
        if layout is None:
            raise ValueError(f"method {method!r} needs a calibrated BinLayout")
        vals = _SUBBAND_FNS[method](img)
        names, hists = [], []
        for (name, v), (lname, lo, hi) in zip(vals, layout.ranges):
            assert name == lname, "layout does not match extraction order"
            names.append(name)
            hists.append(coeff_histogram(v, lo, hi, layout.nbins))
        return DescriptorSet(method=method, names=names, histograms=hists)
    if method == "clbp":
        cfg = clbp_cfg or clbp.ClbpConfig()
        maps = clbp.clbp_codes(img, cfg)
        comps = clbp.clbp_component_histograms(maps)
        hists = [Histogram(bins=h, lo=0.0, hi=float(h.size)) for h in comps]
        return DescriptorSet(method="clbp", names=["S", "M", "C"], histograms=hists)
    if method == "lri":
        cfg = lri_cfg or lri.LriConfig()
        desc = lri.lri_indices(img, cfg)
        names = [f"A_{d}" for d in lri.DIRECTION_NAMES] + [f"D_{d}" for d in lri.DIRECTION_NAMES]
        hists = [
            Histogram(bins=h, lo=-cfg.range_k, hi=cfg.range_k)
            for h in desc.a_hists + desc.d_hists
        ]
        return DescriptorSet(method="lri", names=names, histograms=hists)
    raise ValueError(f"unknown histogram method {method!r}")


def extract_corpus(
    paths,
    method: str,
    nbins: int = 32,
    workers: int = 1,
    clbp_cfg: clbp.ClbpConfig | None = None,
    lri_cfg: lri.LriConfig | None = None,
) -> tuple[list[DescriptorSet], BinLayout | None]:
    """Descriptors for a whole corpus, calibrating the layout when needed."""
    if method not in HISTOGRAM_METHODS:
        raise ValueError(f"unknown histogram method {method!r}")
    layout = None
    if method in ("sp", "ct"):
        layout = calibrate_layout(paths, method, nbins, workers)
    args = [(method, p, layout, clbp_cfg, lri_cfg) for p in paths]
    return _map(_extract_one, args, workers), layout
