"""Deterministic synthetic seismic-like texture generator.

Produces four texture classes mirroring common geological structures:
layered (clear horizontal strata), chaotic (band-limited noise), faulted
(strata broken by vertical displacement discontinuities), and dome
(strata warped around an elliptical bulge).

Randomness comes from numpy's PCG64 generator seeded explicitly, so a
given spec reproduces bit-identical images on any platform. Class recipe
constants (frequency bands, fault throw range, dome geometry) are fixed
module-level constants so that downstream acceptance thresholds stay
meaningful across versions.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .imagecore import save_image, save_manifest

CLASS_KINDS = ("layered", "chaotic", "faulted", "dome")

# class recipes, cycles per pixel unless noted
LAYERED_FREQ = (0.050, 0.070)
FAULTED_FREQ = (0.095, 0.125)
DOME_FREQ = (0.070, 0.090)
CHAOTIC_BAND = (0.08, 0.30)  # isotropic radial passband
FAULT_COUNT = (2, 4)  # inclusive range
FAULT_THROW = (6.0, 16.0)  # pixels of vertical displacement
DOME_AMPLITUDE = (18.0, 30.0)  # peak uplift in pixels
NOISE_LEVEL = 0.08  # additive texture noise relative to unit signal


@dataclass(frozen=True)
class SynthSpec:
    class_kind: str
    height: int = 150
    width: int = 300
    seed: int = 0

    def __post_init__(self):
        if self.class_kind not in CLASS_KINDS:
            raise ValueError(f"unknown class kind {self.class_kind!r}, expected one of {CLASS_KINDS}")
        if self.height < 32 or self.width < 32:
            raise ValueError("height and width must be >= 32")


def _rng(spec: SynthSpec) -> np.random.Generator:
    kind_id = CLASS_KINDS.index(spec.class_kind)
    return np.random.Generator(np.random.PCG64([spec.seed, kind_id, spec.height, spec.width]))


def _strata(h: int, w: int, rng: np.random.Generator, freq_range: tuple[float, float],
            depth_shift: np.ndarray | None = None) -> np.ndarray:
    """Quasi-periodic horizontal strata with mild dip and phase jitter."""
    y = np.arange(h)[:, None].astype(np.float64)
    x = np.arange(w)[None, :].astype(np.float64)
    freq = rng.uniform(*freq_range)
    dip = rng.uniform(-0.03, 0.03)
    wobble_amp = rng.uniform(0.5, 1.5)
    wobble_cycles = rng.uniform(1.0, 2.5)
    phase = rng.uniform(0.0, 2.0 * np.pi)
    depth = y + dip * x + wobble_amp * np.sin(2.0 * np.pi * wobble_cycles * x / w)
    if depth_shift is not None:
        depth = depth + depth_shift
    # two harmonics give layers a reflector-like asymmetric profile
    img = np.sin(2.0 * np.pi * freq * depth + phase)
    img += 0.4 * np.sin(4.0 * np.pi * freq * depth + 2.0 * phase)
    return img


def _bandpass_noise(h: int, w: int, rng: np.random.Generator,
                    band: tuple[float, float]) -> np.ndarray:
    noise = rng.standard_normal((h, w))
    fy = np.fft.fftfreq(h)[:, None]
    fx = np.fft.fftfreq(w)[None, :]
    rho = np.hypot(fy, fx)
    mask = (rho >= band[0]) & (rho <= band[1])
    out = np.fft.ifft2(np.fft.fft2(noise) * mask).real
    return out / max(out.std(), 1e-12)


def generate(spec: SynthSpec) -> np.ndarray:
    """Render one synthetic image as an 8-bit-ready float array in [0, 255]."""
    h, w = spec.height, spec.width
    rng = _rng(spec)

    if spec.class_kind == "layered":
        img = _strata(h, w, rng, LAYERED_FREQ)
    elif spec.class_kind == "chaotic":
        img = _bandpass_noise(h, w, rng, CHAOTIC_BAND)
    elif spec.class_kind == "faulted":
        nfaults = int(rng.integers(FAULT_COUNT[0], FAULT_COUNT[1] + 1))
        margin = max(8, w // 12)
        positions = np.sort(rng.uniform(margin, w - margin, size=nfaults))
        shift = np.zeros((1, w))
        x = np.arange(w)[None, :]
        for pos in positions:
            throw = rng.uniform(*FAULT_THROW) * rng.choice([-1.0, 1.0])
            shift = shift + throw * (x >= pos)
        img = _strata(h, w, rng, FAULTED_FREQ, depth_shift=shift)
    elif spec.class_kind == "dome":
        cx = rng.uniform(0.35 * w, 0.65 * w)
        rx = rng.uniform(0.30 * w, 0.45 * w)
        amp = rng.uniform(*DOME_AMPLITUDE)
        x = np.arange(w)[None, :].astype(np.float64)
        uplift = amp * np.exp(-((x - cx) ** 2) / (2.0 * (rx / 2.0) ** 2))
        img = _strata(h, w, rng, DOME_FREQ, depth_shift=np.broadcast_to(uplift, (h, w)))
    else:  # pragma: no cover - guarded by SynthSpec
        raise ValueError(spec.class_kind)

    img = img + NOISE_LEVEL * rng.standard_normal((h, w))
    lo, hi = img.min(), img.max()
    return np.round(255.0 * (img - lo) / (hi - lo))


def generate_dataset(
    out_dir: str | Path,
    per_class: int,
    height: int = 150,
    width: int = 300,
    seed: int = 0,
    kinds: tuple[str, ...] = CLASS_KINDS,
) -> Path:
    """Write PNG images into out/<class>/NNN.png plus a manifest CSV.

    Returns the manifest path. Fully deterministic for a fixed seed.
    """
    out_dir = Path(out_dir)
    entries: list[tuple[str, str]] = []
    for kind in kinds:
        class_dir = out_dir / kind
        class_dir.mkdir(parents=True, exist_ok=True)
        for i in range(per_class):
            spec = SynthSpec(class_kind=kind, height=height, width=width,
                             seed=(seed << 20) + i)
            img = generate(spec)
            rel = f"{kind}/{i:03d}.png"
            save_image(img, out_dir / rel)
            entries.append((rel, kind))
    manifest = out_dir / "manifest.csv"
    save_manifest(entries, manifest)
    return manifest
