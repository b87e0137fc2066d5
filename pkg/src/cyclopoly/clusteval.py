"""Score 2D embeddings against class labels: k-means, Jaccard, silhouette."""
from __future__ import annotations

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Hashable, Optional, Sequence, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from .model import ClusterEvalReport, DataError, GlyphLayout

THREADS_ENV = "CYCLOPOLY_THREADS"


def max_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class KMeansResult:
    labels: np.ndarray
    centers: np.ndarray
    wcss: float
    history: list = field(default_factory=list)  # WCSS after every assignment step
    n_iter: int = 0
    empty_clusters: int = 0
    restart: int = 0


def _kmeanspp(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    centers = np.empty((k, x.shape[1]))
    centers[0] = x[rng.integers(len(x))]
    d2 = np.sum((x - centers[0]) ** 2, axis=1)
    for c in range(1, k):
        total = d2.sum()
        if total > 0:
            i = rng.choice(len(x), p=d2 / total)
        else:
            i = rng.integers(len(x))
        centers[c] = x[i]
        d2 = np.minimum(d2, np.sum((x - centers[c]) ** 2, axis=1))
    return centers


def _lloyd(x: np.ndarray, k: int, rng: np.random.Generator, max_iter: int, restart: int) -> KMeansResult:
    centers = _kmeanspp(x, k, rng)
    labels = None
    history = []
    empty = 0
    it = 0
    for it in range(1, max_iter + 1):
        d2 = ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new = d2.argmin(axis=1)
        history.append(float(d2[np.arange(len(x)), new].sum()))
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        empty = 0
        for c in range(k):
            members = x[labels == c]
            if len(members):
                centers[c] = members.mean(axis=0)
            else:
                empty += 1
    return KMeansResult(labels, centers, history[-1], history, it, empty, restart)


def _canonical(labels: np.ndarray) -> np.ndarray:
    """Renumber clusters in order of first appearance."""
    order = {}
    for lab in labels:
        order.setdefault(int(lab), len(order))
    return np.array([order[int(lab)] for lab in labels], dtype=int)


def kmeans(points, k: int, restarts: int = 10, seed: int = 42, max_iter: int = 300) -> KMeansResult:
    """Lloyd's algorithm with k-means++ seeding; best of ``restarts`` runs by WCSS.

    Restart r draws from the r-th child of ``SeedSequence(seed)``, so the
    result is independent of how many threads run the restarts.
    """
    x = np.asarray(points, dtype=np.float64).reshape(len(points), -1)
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > len(x):
        raise ValueError(f"k={k} exceeds point count {len(x)}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    children = np.random.SeedSequence(seed).spawn(restarts)

    def run(r):
        return _lloyd(x, k, np.random.default_rng(children[r]), max_iter, r)

    workers = min(max_workers(), restarts)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(run, range(restarts)))
    else:
        results = [run(r) for r in range(restarts)]
    best = min(results, key=lambda res: (res.wcss, res.restart))
    best.labels = _canonical(best.labels)
    return best


def _codes(labels: Sequence[Hashable]) -> np.ndarray:
    index = {}
    return np.array([index.setdefault(lab, len(index)) for lab in labels], dtype=int)


def _contingency(a, b) -> np.ndarray:
    ca, cb = _codes(a), _codes(b)
    table = np.zeros((ca.max() + 1, cb.max() + 1), dtype=np.int64)
    np.add.at(table, (ca, cb), 1)
    return table


def jaccard_index(a: Sequence[Hashable], b: Sequence[Hashable]) -> float:
    """Pair-counting Jaccard similarity of two partitions of the same items.

    n11 / (n11 + n10 + n01) over unordered item pairs. Two partitions into
    singletons share no co-clustered pair and are scored 1.
    """
    if len(a) != len(b):
        raise ValueError(f"assignment lengths differ: {len(a)} vs {len(b)}")
    table = _contingency(a, b)
    pairs = lambda m: int((m * (m - 1) // 2).sum())
    n11 = pairs(table)
    sa = pairs(table.sum(axis=1))
    sb = pairs(table.sum(axis=0))
    denom = sa + sb - n11
    return 1.0 if denom == 0 else n11 / denom


def matched_jaccard(pred: Sequence[Hashable], truth: Sequence[Hashable]) -> float:
    """Per-item Jaccard similarity after the best one-to-one cluster relabelling.

    Each item's label set is a singleton, so the score is the fraction of items
    whose relabelled cluster equals their class. Clusters left unmatched (when
    the cluster and class counts differ) count as misses.
    """
    if len(pred) != len(truth):
        raise ValueError(f"assignment lengths differ: {len(pred)} vs {len(truth)}")
    table = _contingency(pred, truth)
    rows, cols = linear_sum_assignment(-table)
    return float(table[rows, cols].sum()) / len(pred)


def silhouette_samples(points, labels: Sequence[Hashable]) -> np.ndarray:
    x = np.asarray(points, dtype=np.float64).reshape(len(points), -1)
    codes = _codes(labels)
    n_clusters = codes.max() + 1 if len(codes) else 0
    if n_clusters < 2:
        raise ValueError("silhouette undefined for fewer than 2 clusters")
    dist = np.sqrt(((x[:, None, :] - x[None, :, :]) ** 2).sum(axis=2))
    sizes = np.bincount(codes, minlength=n_clusters)
    # sums[i, c] = total distance from point i to the members of cluster c
    sums = np.zeros((len(x), n_clusters))
    for c in range(n_clusters):
        sums[:, c] = dist[:, codes == c].sum(axis=1)
    own = sizes[codes]
    with np.errstate(invalid="ignore", divide="ignore"):
        a = sums[np.arange(len(x)), codes] / (own - 1)
        means = sums / sizes
    means[np.arange(len(x)), codes] = np.inf
    b = means.min(axis=1)
    denom = np.maximum(a, b)
    s = np.zeros(len(x))
    ok = (own > 1) & (denom > 0)
    s[ok] = (b[ok] - a[ok]) / denom[ok]
    return s


def silhouette(points, labels: Sequence[Hashable]) -> float:
    """Mean silhouette coefficient, Euclidean metric; singleton clusters score 0."""
    return float(silhouette_samples(points, labels).mean())


def minmax_normalize(points) -> np.ndarray:
    x = np.asarray(points, dtype=np.float64)
    lo = x.min(axis=0)
    span = x.max(axis=0) - lo
    span[span == 0] = 1.0
    return (x - lo) / span


@dataclass(frozen=True)
class EvalConfig:
    restarts: int = 10
    seed: int = 42
    max_iter: int = 300
    k: Optional[int] = None          # defaults to the number of distinct true labels
    normalize: bool = False          # per-axis min-max of the embedding before scoring
    use_truth_assignment: bool = False  # skip k-means, score the truth against itself


def evaluate_embedding(points, truth: Optional[Sequence[Hashable]],
                       config: EvalConfig = EvalConfig(), **extra) -> ClusterEvalReport:
    if truth is None:
        raise DataError("evaluation needs class labels; the dataset is unlabeled")
    x = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if len(x) != len(truth):
        raise DataError(f"embedding has {len(x)} points for {len(truth)} labels")
    if config.normalize:
        x = minmax_normalize(x)
    truth_codes = _codes(truth)
    k = config.k or int(truth_codes.max() + 1)
    if config.use_truth_assignment:
        labels, wcss, empty = truth_codes, float("nan"), 0
    else:
        res = kmeans(x, k, config.restarts, config.seed, config.max_iter)
        labels, wcss, empty = res.labels, res.wcss, res.empty_clusters
    sil_km = silhouette(x, labels) if len(set(labels.tolist())) > 1 else float("nan")
    return ClusterEvalReport(
        jaccard=matched_jaccard(labels, truth),
        silhouette=silhouette(x, truth),
        kmeans_labels=tuple(int(v) for v in labels),
        k=k,
        restarts=config.restarts,
        seed=config.seed,
        jaccard_pairs=jaccard_index(labels, truth),
        silhouette_kmeans=sil_km,
        wcss=wcss,
        empty_clusters=empty,
        config={**asdict(config), **extra},
    )


def evaluate_placement(layout: GlyphLayout, truth: Optional[Sequence[Hashable]],
                       config: EvalConfig = EvalConfig(), **extra) -> ClusterEvalReport:
    return evaluate_embedding(layout.centroids, truth, config,
                              strategy=layout.strategy.value, **extra)


def load_external_embedding(path: Union[str, Path], expected_rows: Optional[int] = None) -> np.ndarray:
    """Read an ``x,y`` CSV (optional single header line) aligned with dataset order."""
    with open(path, newline="", encoding="utf-8") as f:
        rows = [r for r in csv.reader(f) if r and any(c.strip() for c in r)]
    points = []
    for i, row in enumerate(rows):
        if len(row) != 2:
            raise DataError(f"expected 2 columns at row {i}, got {len(row)}", row=i)
        try:
            points.append((float(row[0]), float(row[1])))
        except ValueError:
            if i == 0:
                continue  # header
            raise DataError(f"non-numeric cell at row {i}: {row!r}", row=i) from None
    if expected_rows is not None and len(points) != expected_rows:
        raise DataError(f"row count {len(points)} ≠ {expected_rows}")
    return np.array(points, dtype=np.float64).reshape(-1, 2)
