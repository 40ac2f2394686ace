"""Grayscale image loading, normalization, and dataset manifests.

Images are plain 2-D float64 arrays (row-major, height x width). All
descriptor code in this package operates on such arrays after
:func:`normalize` has been applied.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image

MIN_DESCRIPTOR_SIZE = 8


class ImageFormatError(ValueError):
    """Raised for unreadable or unsupported image files."""


class ManifestError(ValueError):
    """Raised for malformed manifest files."""


def load_image(path: str | Path) -> np.ndarray:
    """Load an 8-bit grayscale PNG or PGM as a float64 array in [0, 255]."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"image file not found: {path}")
    if path.suffix.lower() not in (".png", ".pgm"):
        raise ImageFormatError(f"unsupported image format: {path.suffix!r} (expected .png or .pgm)")
    with Image.open(path) as im:
        if im.mode not in ("L", "I;16", "P", "1"):
            # palette / bilevel collapse cleanly to L; anything else is not grayscale
            if im.mode != "L":
                try:
                    im = im.convert("L")
                except Exception as exc:  # pragma: no cover
                    raise ImageFormatError(f"cannot read {path} as grayscale") from exc
        arr = np.asarray(im, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ImageFormatError(f"{path}: expected a non-empty 2-D grayscale raster")
    return arr


def save_image(arr: np.ndarray, path: str | Path) -> None:
    """Write a float array to an 8-bit grayscale PNG, clipping to [0, 255]."""
    data = np.clip(np.round(arr), 0, 255).astype(np.uint8)
    Image.fromarray(data, mode="L").save(path)


def normalize(img: np.ndarray) -> np.ndarray:
    """Zero-mean, unit-variance normalization (population sigma).

    Constant images map to all zeros instead of dividing by sigma = 0.
    """
    img = np.asarray(img, dtype=np.float64)
    mu = img.mean()
    sigma = img.std()  # population convention, used library-wide
    if sigma == 0.0:
        return np.zeros_like(img)
    return (img - mu) / sigma


@dataclass(frozen=True)
class DatasetManifest:
    """Ordered (path, label) entries plus the label set."""

    entries: tuple[tuple[Path, str], ...]
    root: Path = field(default_factory=Path)

    @property
    def labels(self) -> list[str]:
        return [label for _, label in self.entries]

    @property
    def classes(self) -> set[str]:
        return set(self.labels)

    def class_sizes(self) -> dict[str, int]:
        sizes: dict[str, int] = {}
        for _, label in self.entries:
            sizes[label] = sizes.get(label, 0) + 1
        return sizes

    def paths(self) -> list[Path]:
        return [self.root / p for p, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def load_manifest(path: str | Path) -> DatasetManifest:
    """Read a `path,label` CSV manifest; paths are relative to the CSV's directory."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"manifest not found: {path}")
    entries: list[tuple[Path, str]] = []
    seen: set[str] = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip() for c in header[:2]] != ["path", "label"]:
            raise ManifestError(f"{path}: expected header 'path,label'")
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < 2 or not row[0].strip() or not row[1].strip():
                raise ManifestError(f"{path}:{lineno}: malformed row {row!r}")
            rel, label = row[0].strip(), row[1].strip()
            if rel in seen:
                raise ManifestError(f"{path}:{lineno}: duplicate path {rel!r}")
            seen.add(rel)
            entries.append((Path(rel), label))
    return DatasetManifest(entries=tuple(entries), root=path.parent)


def save_manifest(entries: list[tuple[str, str]], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["path", "label"])
        writer.writerows(entries)
