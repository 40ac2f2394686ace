"""Command-line interface wiring the modules into the retrieval pipeline."""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click

from . import retrieval as rt
from . import synthgen
from .descriptor import save_descriptors
from .imagecore import load_image, load_manifest, normalize
from .pipeline import ALL_METHODS, HISTOGRAM_METHODS, extract_corpus, load_normalized

METHOD_CHOICES = click.Choice(ALL_METHODS)


def _parse_size(value: str) -> tuple[int, int]:
    try:
        h, w = value.lower().split("x")
        return int(h), int(w)
    except ValueError:
        raise click.BadParameter(f"expected HxW, e.g. 150x300, got {value!r}")


@click.group()
def main():
    """Texture attributes and content-based retrieval for seismic-style images."""


@main.command()
@click.option("--classes", default=4, type=click.IntRange(1, 4), show_default=True,
              help="Number of texture classes to generate.")
@click.option("--per-class", default=25, type=click.IntRange(1), show_default=True)
@click.option("--size", default="150x300", show_default=True, help="Image size as HxW.")
@click.option("--seed", default=0, type=int, show_default=True)
@click.option("--out", required=True, type=click.Path(path_type=Path))
def synth(classes, per_class, size, seed, out):
    """Generate a synthetic labeled dataset plus manifest CSV."""
    h, w = _parse_size(size)
    kinds = synthgen.CLASS_KINDS[:classes]
    manifest = synthgen.generate_dataset(out, per_class, height=h, width=w, seed=seed, kinds=kinds)
    click.echo(f"wrote {classes * per_class} images, manifest: {manifest}")


@main.command()
@click.option("--manifest", "manifest_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--method", required=True, type=click.Choice(HISTOGRAM_METHODS))
@click.option("--bins", default=32, type=click.IntRange(2), show_default=True)
@click.option("--workers", default=1, type=click.IntRange(1), envvar="SEISTEX_WORKERS",
              show_default=True)
@click.option("--out", required=True, type=click.Path(path_type=Path))
def extract(manifest_path, method, bins, workers, out):
    """Extract per-image descriptors for every manifest entry."""
    manifest = load_manifest(manifest_path)
    descriptors, _ = extract_corpus(manifest.paths(), method, nbins=bins, workers=workers)
    save_descriptors(descriptors, out)
    click.echo(f"wrote {len(descriptors)} descriptor sets to {out}")


@main.command()
@click.option("--manifest", "manifest_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--method", required=True, type=METHOD_CHOICES)
@click.option("--distance", default="scd", type=click.Choice(["scd", "kld"]), show_default=True)
@click.option("--bins", default=32, type=click.IntRange(2), show_default=True)
@click.option("--workers", default=1, type=click.IntRange(1), envvar="SEISTEX_WORKERS",
              show_default=True)
@click.option("--out", required=True, type=click.Path(path_type=Path))
def retrieve(manifest_path, method, distance, bins, workers, out):
    """Run leave-one-out retrieval and write the rankings CSV."""
    manifest = load_manifest(manifest_path)
    rankings = rt.run_retrieval(manifest, method, distance, nbins=bins, workers=workers)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["query_id", "rank", "item_id", "similarity", "relevant"])
        for r in rankings:
            for rank, (item, sim, rel) in enumerate(
                zip(r.item_ids, r.similarities, r.relevant), start=1
            ):
                writer.writerow([r.query_id, rank, item, repr(float(sim)), int(rel)])
    click.echo(f"wrote rankings for {len(rankings)} queries to {out}")


@main.command()
@click.option("--manifest", "manifest_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--method", "methods", multiple=True, type=METHOD_CHOICES,
              help="Repeatable; defaults to all methods.")
@click.option("--distance", default="scd", type=click.Choice(["scd", "kld"]), show_default=True)
@click.option("--bins", default=32, type=click.IntRange(2), show_default=True)
@click.option("--workers", default=1, type=click.IntRange(1), envvar="SEISTEX_WORKERS",
              show_default=True)
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--roc-out", default=None, type=click.Path(path_type=Path),
              help="Optional CSV of per-method ROC curve points.")
def evaluate(manifest_path, methods, distance, bins, workers, out, roc_out):
    """Compute P@20, P@50, MAP, RA, and AUC for the selected methods."""
    manifest = load_manifest(manifest_path)
    methods = methods or ALL_METHODS
    report = {}
    roc_rows = []
    for method in methods:
        rankings = rt.run_retrieval(manifest, method, distance, nbins=bins, workers=workers)
        row = rt.compute_metrics(rankings, manifest)
        row["seconds_per_pair"] = None  # filled by bench-time, kept for schema parity
        report[method] = row
        if roc_out is not None:
            for fpr, tpr in _roc_points(rankings):
                roc_rows.append([method, repr(fpr), repr(tpr)])
    Path(out).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    if roc_out is not None:
        with open(roc_out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["method", "fpr", "tpr"])
            writer.writerows(roc_rows)
    click.echo(f"wrote metrics for {len(methods)} method(s) to {out}")


def _roc_points(rankings):
    """Pooled ROC curve over all queries (rank positions as thresholds)."""
    import numpy as np

    n = max(len(r) for r in rankings)
    pts = [(0.0, 0.0)]
    total_pos = sum(int(np.sum(r.relevant)) for r in rankings)
    total_neg = sum(len(r) - int(np.sum(r.relevant)) for r in rankings)
    for cut in range(1, n + 1):
        tp = sum(int(np.sum(r.relevant[:cut])) for r in rankings)
        fp = sum(cut - int(np.sum(r.relevant[:cut])) if len(r) >= cut else
                 len(r) - int(np.sum(r.relevant)) for r in rankings)
        pts.append((fp / total_neg, tp / total_pos))
    return pts


@main.command(name="seisim")
@click.argument("image_a", type=click.Path(exists=True, path_type=Path))
@click.argument("image_b", type=click.Path(exists=True, path_type=Path))
def seisim_cmd(image_a, image_b):
    """Print the SeiSIM similarity of two images."""
    from .seisim import seisim

    a = normalize(load_image(image_a))
    b = normalize(load_image(image_b))
    click.echo(f"{seisim(a, b):.6f}")


@main.command(name="bench-time")
@click.option("--image-a", type=click.Path(exists=True, path_type=Path))
@click.option("--image-b", type=click.Path(exists=True, path_type=Path))
@click.option("--manifest", "manifest_path", type=click.Path(exists=True, path_type=Path),
              help="Alternative to --image-a/--image-b: time the first two entries.")
@click.option("--method", "methods", multiple=True, type=METHOD_CHOICES,
              help="Repeatable; defaults to all methods.")
@click.option("--reps", default=5, type=click.IntRange(3), show_default=True)
@click.option("--bins", default=32, type=click.IntRange(2), show_default=True)
@click.option("--out", required=True, type=click.Path(path_type=Path))
def bench_time(image_a, image_b, manifest_path, methods, reps, bins, out):
    """Median per-pair comparison time for each method, as CSV."""
    if manifest_path is not None:
        manifest = load_manifest(manifest_path)
        if len(manifest) < 2:
            raise click.UsageError("manifest needs at least two entries")
        paths = manifest.paths()[:2]
    elif image_a is not None and image_b is not None:
        paths = [image_a, image_b]
    else:
        raise click.UsageError("provide either --manifest or both --image-a and --image-b")
    a, b = (load_normalized(p) for p in paths)
    methods = methods or ALL_METHODS
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "seconds_per_pair"])
        for method in methods:
            seconds = rt.bench_pair_time(method, a, b, reps=reps, nbins=bins)
            writer.writerow([method, f"{seconds:.6f}"])
    click.echo(f"wrote timings for {len(methods)} method(s) to {out}")


if __name__ == "__main__":
    sys.exit(main())
