"""Similarity model and hierarchical clustering over co-occurrence profiles.

Counts become Pearson correlations computed over pairwise-complete
observations, correlations become Euclidean distances (rescaled for missing
coordinates), and the distance matrix is clustered with Ward's
minimum-variance method. The cluster count is picked by the elbow rule on
the explained-variance curve; purity scores a solution against reference
labels.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

import numpy as np

from .cooccur import CoOccurrenceMatrix
from .errors import ElbowNotFoundError, InsufficientDocumentsError

MIN_PAIRWISE_OBS = 3  # Pearson over fewer points is degenerate (always +-1)
MISSING_DISTANCE_FACTOR = 1.05  # imputed missing distance = max observed * this


@dataclass
class SimilarityModel:
    """Pairwise-complete correlations and the distances derived from them.

    Matrices are dense with NaN marking missing cells; the correlation
    diagonal is NaN by construction (a document has no profile against
    itself), the distance diagonal is zero.
    """

    doc_ids: tuple[str, ...]
    correlations: np.ndarray
    n_obs: np.ndarray
    distances: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return len(self.doc_ids)


@dataclass(frozen=True)
class Merge:
    """One agglomeration step. Cluster ids follow the usual linkage scheme:

    ids 0..n-1 are the input documents (matrix order); the cluster created
    at step t gets id n+t. `left` and `right` are ordered by each side's
    smallest member doc_id.
    """

    left: int
    right: int
    height: float


@dataclass
class ClusterSolution:
    doc_ids: tuple[str, ...]
    merges: tuple[Merge, ...]
    k: int
    assignment: dict[str, int]
    explained_variance: dict[int, float]


def pearson_pairwise(matrix: CoOccurrenceMatrix, min_obs: int = MIN_PAIRWISE_OBS) -> SimilarityModel:
    """Correlate every document pair over their jointly observed profile rows.

    A cell is missing when fewer than `min_obs` rows are jointly observed or
    when either profile has zero variance on the shared rows. Diagonal rows
    never participate because diagonal cells are missing by construction.
    """
    n = matrix.n
    if n < 3:
        raise InsufficientDocumentsError(
            f"insufficient documents for correlation: need >= 3, got {n}"
        )
    dense = matrix.to_dense()
    finite = np.isfinite(dense)
    correlations = np.full((n, n), np.nan)
    n_obs = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(i + 1, n):
            mask = finite[i] & finite[j]
            c = int(mask.sum())
            n_obs[i, j] = n_obs[j, i] = c
            if c < min_obs:
                continue
            x = dense[i, mask]
            y = dense[j, mask]
            dx = x - x.mean()
            dy = y - y.mean()
            denom = np.sqrt((dx * dx).sum() * (dy * dy).sum())
            if denom == 0.0:
                continue
            r = float((dx * dy).sum() / denom)
            correlations[i, j] = correlations[j, i] = r
    return SimilarityModel(
        doc_ids=matrix.doc_ids, correlations=correlations, n_obs=n_obs
    )


def euclidean_from_correlations(model: SimilarityModel) -> SimilarityModel:
    """Distances between correlation profiles, rescaled for missing coordinates.

    For documents i and j the profile coordinates are the correlations to
    every other document k (k = i and k = j are excluded by the NaN
    diagonal). With c shared coordinates out of the m = n - 2 possible, the
    squared coordinate differences are summed and scaled by m / c, so a pair
    observed on fewer coordinates is not spuriously closer. No shared
    coordinate at all leaves the distance missing.
    """
    n = model.n
    corr = model.correlations
    finite = np.isfinite(corr)
    m = n - 2
    distances = np.full((n, n), np.nan)
    np.fill_diagonal(distances, 0.0)
    for i in range(n):
        for j in range(i + 1, n):
            mask = finite[i] & finite[j]
            c = int(mask.sum())
            if c == 0:
                continue
            diff = corr[i, mask] - corr[j, mask]
            d = float(np.sqrt((m / c) * (diff * diff).sum()))
            distances[i, j] = distances[j, i] = d
    return replace(model, distances=distances)


def impute_missing_distances(
    distances: np.ndarray, factor: float = MISSING_DISTANCE_FACTOR
) -> np.ndarray:
    """Fill missing distances with max observed * factor.

    Absent shared readership reads as maximal dissimilarity without
    distorting the observed scale; clustering requires a complete matrix.
    """
    out = distances.copy()
    off_diag = ~np.eye(len(out), dtype=bool)
    missing = ~np.isfinite(out) & off_diag
    if missing.any():
        observed = out[np.isfinite(out) & off_diag]
        fill = float(observed.max()) * factor if observed.size else 1.0
        out[missing] = fill
    return out


def ward_hac(distances: np.ndarray, doc_ids: Sequence[str]) -> tuple[Merge, ...]:
    """Agglomerate by Ward's minimum-variance criterion.

    Runs the Lance-Williams update on squared distances, which tracks twice
    the increase in total within-cluster variance under the pairwise-sum
    identity, so the greedy minimum matches a direct variance recomputation.
    Heights are the square roots of the updated values and are
    non-decreasing. Ties are broken by the lexicographically smallest pair
    of cluster representatives, a representative being the cluster's
    smallest member doc_id.
    """
    n = len(doc_ids)
    if n < 2:
        raise InsufficientDocumentsError("clustering needs at least 2 documents")
    if distances.shape != (n, n):
        raise ValueError("distance matrix shape does not match doc_ids")
    if not np.isfinite(distances).all():
        raise ValueError("distance matrix has missing values; impute first")

    d2 = {}
    for i in range(n):
        for j in range(i + 1, n):
            d2[(i, j)] = float(distances[i, j] ** 2)

    sizes = {i: 1 for i in range(n)}
    reps = {i: doc_ids[i] for i in range(n)}
    active = set(range(n))
    merges: list[Merge] = []

    def pair_key(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    for step in range(n - 1):
        best = None
        ordered = sorted(active)
        for ai, a in enumerate(ordered):
            for b in ordered[ai + 1 :]:
                value = d2[pair_key(a, b)]
                tie = tuple(sorted((reps[a], reps[b])))
                cand = (value, tie, a, b)
                if best is None or cand[:2] < best[:2]:
                    best = cand
        value, _, a, b = best
        new_id = n + step
        na, nb = sizes[a], sizes[b]
        for k in sorted(active):
            if k in (a, b):
                continue
            nk = sizes[k]
            total = na + nb + nk
            updated = (
                (na + nk) * d2[pair_key(a, k)]
                + (nb + nk) * d2[pair_key(b, k)]
                - nk * value
            ) / total
            d2[pair_key(new_id, k)] = updated
        active.discard(a)
        active.discard(b)
        active.add(new_id)
        sizes[new_id] = na + nb
        reps[new_id] = min(reps[a], reps[b])
        left, right = (a, b) if reps[a] <= reps[b] else (b, a)
        merges.append(Merge(left=left, right=right, height=float(np.sqrt(value))))
    return tuple(merges)


def cut_clusters(merges: Sequence[Merge], n: int, k: int) -> list[list[int]]:
    """Member index lists for the k-cluster cut, ordered by smallest member."""
    if not (1 <= k <= n):
        raise ValueError(f"k must be in 1..{n}")
    members: dict[int, list[int]] = {i: [i] for i in range(n)}
    for step, merge in enumerate(merges[: n - k]):
        new_id = n + step
        members[new_id] = members.pop(merge.left) + members.pop(merge.right)
    clusters = [sorted(v) for v in members.values()]
    clusters.sort(key=lambda ms: ms[0])
    return clusters


def explained_variance_curve(
    merges: Sequence[Merge], distances: np.ndarray
) -> dict[int, float]:
    """Fraction of total variance explained at every cluster count.

    Within-cluster variance uses the centroid-free identity (sum of squared
    intra-cluster distances over cluster size); each merge raises it by
    height^2 / 2, so the curve accumulates directly from merge heights.
    """
    n = len(distances)
    iu = np.triu_indices(n, k=1)
    tss = float((distances[iu] ** 2).sum()) / n
    curve: dict[int, float] = {n: 1.0}
    wss = 0.0
    for step, merge in enumerate(merges):
        wss += merge.height**2 / 2.0
        k = n - step - 1
        curve[k] = 1.0 - wss / tss if tss > 0 else 1.0
    return dict(sorted(curve.items()))


def elbow_from_curve(
    curve: Mapping[int, float], variance_floor: float, increment_ceiling: float
) -> Optional[int]:
    """Smallest k meeting the floor whose next increment falls under the ceiling.

    Only counts whose successor k+1 is on the curve are candidates (the
    increment rule needs it). Returns None when no count qualifies.
    """
    for k in sorted(curve):
        if k + 1 not in curve:
            continue
        if curve[k] >= variance_floor and curve[k + 1] - curve[k] < increment_ceiling:
            return k
    return None


def choose_k_elbow(
    merges: Sequence[Merge],
    distances: np.ndarray,
    variance_floor: float = 0.80,
    increment_ceiling: float = 0.01,
) -> tuple[int, dict[int, float]]:
    """Pick the cluster count by the elbow rule; returns (k, variance curve)."""
    curve = explained_variance_curve(merges, distances)
    k = elbow_from_curve(curve, variance_floor, increment_ceiling)
    if k is None:
        raise ElbowNotFoundError(curve, variance_floor, increment_ceiling)
    return k, curve


def solve_clusters(
    distances: np.ndarray,
    doc_ids: Sequence[str],
    variance_floor: float = 0.80,
    increment_ceiling: float = 0.01,
) -> ClusterSolution:
    """Ward + elbow + assignment in one call on a complete distance matrix.

    Cluster indices 1..k are ordered by each cluster's smallest member
    doc_id, which keeps assignments stable across runs.
    """
    order = sorted(range(len(doc_ids)), key=lambda i: doc_ids[i])
    # canonical doc_id order makes the result independent of input order
    canon_ids = [doc_ids[i] for i in order]
    canon_d = distances[np.ix_(order, order)]
    merges = ward_hac(canon_d, canon_ids)
    k, curve = choose_k_elbow(merges, canon_d, variance_floor, increment_ceiling)
    clusters = cut_clusters(merges, len(canon_ids), k)
    assignment = {
        canon_ids[m]: idx for idx, members in enumerate(clusters, start=1) for m in members
    }
    return ClusterSolution(
        doc_ids=tuple(canon_ids),  # merge indices refer to this order
        merges=merges,
        k=k,
        assignment=assignment,
        explained_variance=curve,
    )


def purity(assignment: Mapping[str, int], reference_labels: Mapping[str, str]) -> float:
    """Fraction of documents in the majority reference class of their cluster."""
    if not assignment:
        raise ValueError("assignment is empty")
    by_cluster: dict[int, dict[str, int]] = {}
    for doc_id, cluster in assignment.items():
        if doc_id not in reference_labels:
            raise KeyError(f"no reference label for document {doc_id!r}")
        label = reference_labels[doc_id]
        counts = by_cluster.setdefault(cluster, {})
        counts[label] = counts.get(label, 0) + 1
    correct = sum(max(counts.values()) for counts in by_cluster.values())
    return correct / len(assignment)


def write_dendrogram(merges: Sequence[Merge], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "left", "right", "height"])
        for step, merge in enumerate(merges):
            writer.writerow([step, merge.left, merge.right, repr(merge.height)])
