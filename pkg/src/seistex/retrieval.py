"""Leave-one-out retrieval engine, evaluation metrics, and timing harness."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import seisim as ss
from .imagecore import DatasetManifest
from .pipeline import (
    ALL_METHODS,
    calibrate_layout_images,
    extract_corpus,
    extract_descriptor,
    load_normalized,
)


@dataclass
class RankedList:
    """One query's ordering of the rest of the corpus by descending similarity."""

    query_id: int
    item_ids: np.ndarray
    similarities: np.ndarray
    relevant: np.ndarray  # bool, same class as the query

    def __len__(self) -> int:
        return len(self.item_ids)


# ---------------------------------------------------------------------------
# similarity matrices

def descriptor_similarity_matrix(descriptors, distance: str = "scd") -> np.ndarray:
    """Pairwise similarity from per-histogram distances, vectorized.

    Both supported distances are sums of binwise terms, so descriptor sets
    can be compared on their concatenated histograms.
    """
    from .descriptor import KLD_EPSILON

    x = np.stack([d.concatenated() for d in descriptors])
    if distance == "scd":
        s = np.sqrt(x)
        sq = np.sum(s * s, axis=1)
        d = sq[:, None] + sq[None, :] - 2.0 * (s @ s.T)
        d = np.maximum(d, 0.0)
    elif distance == "kld":
        # per-histogram epsilon smoothing, then binwise symmetric KL
        parts = []
        col = 0
        for h in descriptors[0].histograms:
            block = x[:, col : col + h.nbins] + KLD_EPSILON
            block /= block.sum(axis=1, keepdims=True)
            parts.append(block)
            col += h.nbins
        p = np.concatenate(parts, axis=1)
        logp = np.log(p)
        # sum_i (p_i - q_i)(log p_i - log q_i), expanded for pairwise form
        d = (
            np.sum(p * logp, axis=1)[:, None]
            + np.sum(p * logp, axis=1)[None, :]
            - p @ logp.T
            - logp @ p.T
        )
        d = np.maximum(d, 0.0)
    else:
        raise ValueError(f"unknown distance {distance!r}")
    return 1.0 / (1.0 + d)


def _seisim_stats(path):
    img = load_normalized(path)
    sub = ss.image_subband_stats(img)
    dm = ss.subband_stats(ss.discontinuity_map(img))
    return sub, dm


def seisim_similarity_matrix(paths, workers: int = 1) -> np.ndarray:
    """Pairwise SeiSIM scores from per-image precomputed statistics."""
    if workers <= 1:
        stats = [_seisim_stats(p) for p in paths]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(_seisim_stats, paths))
    n = len(stats)
    sim = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            q_tex = ss.stsim1_from_stats(stats[i][0], stats[j][0])
            q_dm = ss.dm_similarity_from_stats(stats[i][1], stats[j][1])
            sim[i, j] = sim[j, i] = np.sqrt(q_tex * q_dm)
    return sim


def rankings_from_similarity(sim: np.ndarray, labels) -> list[RankedList]:
    """Leave-one-out rankings; ties broken by ascending image id."""
    n = sim.shape[0]
    labels = list(labels)
    out = []
    for q in range(n):
        others = np.array([i for i in range(n) if i != q])
        s = sim[q, others]
        order = np.lexsort((others, -s))  # primary: similarity desc, then id asc
        ids = others[order]
        out.append(
            RankedList(
                query_id=q,
                item_ids=ids,
                similarities=s[order],
                relevant=np.array([labels[i] == labels[q] for i in ids]),
            )
        )
    return out


def run_retrieval(
    manifest: DatasetManifest,
    method: str,
    distance: str = "scd",
    nbins: int = 32,
    workers: int = 1,
) -> list[RankedList]:
    """Leave-one-out retrieval over the manifest's corpus for one method."""
    if method not in ALL_METHODS:
        raise ValueError(f"unknown method {method!r}")
    if len(manifest) == 0:
        raise ValueError("empty manifest")
    sizes = manifest.class_sizes()
    if len(sizes) < 2 or min(sizes.values()) < 2:
        raise ValueError("retrieval needs >= 2 classes with >= 2 images each")
    paths = manifest.paths()
    if method == "seisim":
        sim = seisim_similarity_matrix(paths, workers)
    else:
        descriptors, _ = extract_corpus(paths, method, nbins=nbins, workers=workers)
        sim = descriptor_similarity_matrix(descriptors, distance)
    return rankings_from_similarity(sim, manifest.labels)


# ---------------------------------------------------------------------------
# metrics

def precision_at_n(r: RankedList, n: int) -> float:
    if not 1 <= n <= len(r):
        raise ValueError(f"n={n} out of range for ranking of length {len(r)}")
    return float(np.sum(r.relevant[:n])) / n


def average_precision(r: RankedList) -> float:
    ranks = np.flatnonzero(r.relevant) + 1  # 1-based ranks of relevant items
    if ranks.size == 0:
        raise ValueError("ranking has no relevant items")
    return float(np.mean(np.arange(1, ranks.size + 1) / ranks))


def mean_average_precision(rankings) -> float:
    return float(np.mean([average_precision(r) for r in rankings]))


def retrieval_accuracy(rankings, manifest: DatasetManifest) -> float:
    """Mean precision at (class size - 1): the number of existing matches."""
    sizes = manifest.class_sizes()
    labels = manifest.labels
    vals = []
    for r in rankings:
        c = sizes[labels[r.query_id]]
        if c < 2:
            raise ValueError("retrieval accuracy undefined for a class of size 1")
        vals.append(precision_at_n(r, c - 1))
    return float(np.mean(vals))


def ranking_auc(r: RankedList) -> float:
    """Probability a relevant item scores above an irrelevant one (ties half)."""
    pos = r.similarities[r.relevant]
    neg = r.similarities[~r.relevant]
    if pos.size == 0 or neg.size == 0:
        raise ValueError("AUC needs both relevant and irrelevant items")
    greater = np.sum(pos[:, None] > neg[None, :])
    ties = np.sum(pos[:, None] == neg[None, :])
    return float((greater + 0.5 * ties) / (pos.size * neg.size))


def auc(rankings) -> float:
    return float(np.mean([ranking_auc(r) for r in rankings]))


def mean_precision_at_n(rankings, n: int) -> float:
    return float(np.mean([precision_at_n(r, n) for r in rankings]))


def compute_metrics(rankings, manifest: DatasetManifest, at_n=(20, 50)) -> dict:
    """All retrieval metrics for one method, ready for JSON serialization."""
    report = {}
    for n in at_n:
        key = f"p_at_{n}"
        if all(len(r) >= n for r in rankings):
            report[key] = mean_precision_at_n(rankings, n)
        else:
            report[key] = None  # corpus smaller than the cutoff
    report["map"] = mean_average_precision(rankings)
    report["ra"] = retrieval_accuracy(rankings, manifest)
    report["auc"] = auc(rankings)
    return report


# ---------------------------------------------------------------------------
# timing harness

def bench_pair_time(method: str, a: np.ndarray, b: np.ndarray, reps: int = 5,
                    nbins: int = 32) -> float:
    """Median seconds to compare one image pair with the given method.

    Covers descriptor extraction for both images plus the distance (or the
    full SeiSIM evaluation). One warm-up run is excluded.
    """
    if reps < 3:
        raise ValueError("reps must be >= 3")
    if method not in ALL_METHODS:
        raise ValueError(f"unknown method {method!r}")

    if method == "seisim":
        def once():
            ss.seisim(a, b)
    else:
        from .descriptor import aggregate_distance

        layout = None
        if method in ("sp", "ct"):
            # calibrated from the pair itself; excluded from the timed section
            layout = calibrate_layout_images([a, b], method, nbins)

        def once():
            da = extract_descriptor(a, method, layout=layout)
            db = extract_descriptor(b, method, layout=layout)
            aggregate_distance(da, db, "scd")

    once()  # warm-up
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        once()
        times.append(time.perf_counter() - t0)
    return float(np.median(times))
