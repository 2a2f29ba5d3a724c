"""Non-metric multidimensional scaling into the plane.

Each restart starts from a seeded random configuration and alternates
monotone regression of disparities (pool-adjacent-violators over the rank
order of the input dissimilarities, primary treatment of ties) with a
gradient step on the configuration, driven by a backtracking line search so
the stress value never increases within a restart. The best restart is kept,
centered, and aligned to its principal axes so runs are comparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateEmbeddingError

ACCEPTABLE_R_SQUARED = 0.60  # below this the fit is conventionally considered poor

_EPS = 1e-12


@dataclass
class Embedding:
    """A 2D configuration with its goodness-of-fit numbers.

    `stress` is Kruskal's stress-1; `r_squared` is the squared Pearson
    correlation between input dissimilarities and configuration distances.
    `stress_history` traces the winning restart, one value per iteration.
    """

    coords: dict[str, tuple[float, ...]]
    stress: float
    r_squared: float
    restarts_used: int
    seed: int
    stress_history: tuple[float, ...] = ()


def _pair_arrays(distances: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = len(distances)
    iu, ju = np.triu_indices(n, k=1)
    return iu, ju, distances[iu, ju]


def isotonic_fit(values: np.ndarray) -> np.ndarray:
    """Least-squares non-decreasing fit (pool-adjacent-violators).

    Blocks are kept as (level, weight, count) stacks and merged backwards
    whenever a new value violates monotonicity.
    """
    levels: list[float] = []
    weights: list[float] = []
    counts: list[int] = []
    for v in np.asarray(values, dtype=float).tolist():
        levels.append(v)
        weights.append(1.0)
        counts.append(1)
        while len(levels) > 1 and levels[-2] > levels[-1]:
            lv, wv, cv = levels.pop(), weights.pop(), counts.pop()
            combined = weights[-1] + wv
            levels[-1] = (weights[-1] * levels[-1] + wv * lv) / combined
            weights[-1] = combined
            counts[-1] += cv
    out = np.empty(len(values))
    pos = 0
    for lv, cv in zip(levels, counts):
        out[pos : pos + cv] = lv
        pos += cv
    return out


def _config_distances(coords: np.ndarray, iu: np.ndarray, ju: np.ndarray) -> np.ndarray:
    diff = coords[iu] - coords[ju]
    return np.sqrt((diff * diff).sum(axis=1))


def _stress_and_disparities(
    d_config: np.ndarray, order: np.ndarray
) -> tuple[float, np.ndarray]:
    """Kruskal stress-1 and the PAVA disparities for a configuration."""
    denom = float((d_config * d_config).sum())
    if denom < _EPS:
        return math.inf, np.zeros_like(d_config)
    disparities = np.empty_like(d_config)
    disparities[order] = isotonic_fit(d_config[order])
    resid = disparities - d_config
    return math.sqrt(float((resid * resid).sum()) / denom), disparities


def _stress_gradient(
    coords: np.ndarray,
    iu: np.ndarray,
    ju: np.ndarray,
    d_config: np.ndarray,
    disparities: np.ndarray,
    stress: float,
) -> np.ndarray:
    """Analytic gradient of stress-1 with the disparities held fixed."""
    n = len(coords)
    safe = np.maximum(d_config, _EPS)
    a = float(((disparities - d_config) ** 2).sum())
    b = float((d_config * d_config).sum())
    diff = coords[iu] - coords[ju]
    # dA/dx and dB/dx accumulated per point from each pair's contribution
    wa = (d_config - disparities) / safe
    grad_a = np.zeros_like(coords)
    grad_b = np.zeros_like(coords)
    contrib_a = 2.0 * wa[:, None] * diff
    contrib_b = 2.0 * diff
    np.add.at(grad_a, iu, contrib_a)
    np.add.at(grad_a, ju, -contrib_a)
    np.add.at(grad_b, iu, contrib_b)
    np.add.at(grad_b, ju, -contrib_b)
    return (grad_a * b - a * grad_b) / (2.0 * max(stress, _EPS) * b * b)


def _fixed_disparity_stress(d_config: np.ndarray, disparities: np.ndarray) -> float:
    """Stress with the disparities frozen; an upper bound on the true stress
    because the monotone regression can only shrink the residual."""
    denom = float((d_config * d_config).sum())
    if denom < _EPS:
        return math.inf
    resid = disparities - d_config
    return math.sqrt(float((resid * resid).sum()) / denom)


def _run_restart(
    distances: np.ndarray,
    dims: int,
    max_iter: int,
    tol: float,
    rng: np.random.Generator,
) -> tuple[np.ndarray, float, list[float]]:
    n = len(distances)
    iu, ju, deltas = _pair_arrays(distances)
    coords = rng.standard_normal((n, dims))

    d_config = _config_distances(coords, iu, ju)
    # primary tie handling: within equal dissimilarities, order follows the
    # configuration so ties never force equal disparities
    order = np.lexsort((d_config, deltas))
    stress, disparities = _stress_and_disparities(d_config, order)
    history = [stress]
    if not math.isfinite(stress):
        return coords, stress, history

    step = 1.0
    for _ in range(max_iter):
        grad = _stress_gradient(coords, iu, ju, d_config, disparities, stress)
        grad_scale = float(np.sqrt((grad * grad).sum()))
        if grad_scale < _EPS:
            break
        # backtracking line search against the frozen-disparity bound: any
        # step passing it cannot increase the true stress either
        accepted = False
        trial_step = step
        for _ in range(40):
            candidate = coords - trial_step * grad
            cand_d = _config_distances(candidate, iu, ju)
            bound = _fixed_disparity_stress(cand_d, disparities)
            if bound <= stress:
                accepted = True
                break
            trial_step *= 0.5
        if not accepted:
            break
        coords, d_config = candidate, cand_d
        order = np.lexsort((d_config, deltas))
        new_stress, disparities = _stress_and_disparities(d_config, order)
        gain = stress - new_stress
        prev = stress
        stress = new_stress
        history.append(stress)
        step = trial_step * 2.0
        if prev > 0 and gain / prev < tol:
            break
    return coords, stress, history


def _align(coords: np.ndarray, doc_order: Sequence[str]) -> np.ndarray:
    """Center, rotate to principal axes, and fix reflections deterministically.

    The first axis carries the larger variance; each axis is flipped to give
    its coordinates positive skew. A (near-)zero skew falls back to the sign
    of the first listed document's coordinate, so the convention is still a
    function of the point set alone.
    """
    centered = coords - coords.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    rotated = centered @ vt.T
    for axis in range(rotated.shape[1]):
        column = rotated[:, axis]
        skew = float((column**3).sum())
        if abs(skew) > 1e-9:
            if skew < 0:
                rotated[:, axis] = -column
            continue
        for val in column:  # doc_order is sorted, so this is order-invariant
            if abs(val) > 1e-9:
                if val < 0:
                    rotated[:, axis] = -column
                break
    return rotated


def nmds(
    distances: np.ndarray,
    doc_ids: Sequence[str],
    dims: int = 2,
    restarts: int = 20,
    max_iter: int = 500,
    tol: float = 1e-6,
    seed: int = 0,
) -> Embedding:
    """Embed a complete distance matrix in `dims` dimensions.

    Restart r draws its start configuration from a generator keyed on
    (seed, r), so restarts are independent and the minimum-stress winner is
    deterministic. Documents are processed in sorted doc_id order, which
    makes the result invariant under permutations of the input order.
    """
    n = len(doc_ids)
    if n < 4:
        raise ValueError("ordination needs at least 4 documents")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if distances.shape != (n, n):
        raise ValueError("distance matrix shape does not match doc_ids")
    if not np.isfinite(distances).all():
        raise ValueError("distance matrix has missing values; impute first")

    order = sorted(range(n), key=lambda i: doc_ids[i])
    canon_ids = [doc_ids[i] for i in order]
    canon_d = distances[np.ix_(order, order)]

    best: tuple[np.ndarray, float, list[float]] | None = None
    for restart in range(restarts):
        rng = np.random.default_rng([seed, restart])
        coords, stress, history = _run_restart(canon_d, dims, max_iter, tol, rng)
        if not math.isfinite(stress):
            continue
        if best is None or stress < best[1]:
            best = (coords, stress, history)
    if best is None:
        raise DegenerateEmbeddingError(
            f"all {restarts} restarts produced degenerate configurations"
        )
    coords, stress, history = best
    aligned = _align(coords, canon_ids)

    iu, ju, deltas = _pair_arrays(canon_d)
    d_config = _config_distances(aligned, iu, ju)
    if deltas.std() < _EPS or d_config.std() < _EPS:
        r = 0.0  # constant distances on either side leave r undefined
    else:
        r = float(np.corrcoef(deltas, d_config)[0, 1])
    return Embedding(
        coords={doc: tuple(float(v) for v in aligned[i]) for i, doc in enumerate(canon_ids)},
        stress=float(stress),
        r_squared=r * r,
        restarts_used=restarts,
        seed=seed,
        stress_history=tuple(history),
    )


def shepard_data(
    distances: np.ndarray, doc_ids: Sequence[str], embedding: Embedding
) -> list[tuple[float, float, float]]:
    """Per-pair (input dissimilarity, configuration distance, disparity) records.

    Sorted by input dissimilarity with ties in configuration-distance order,
    the same order the monotone regression uses, so disparities are
    non-decreasing along the list.
    """
    n = len(doc_ids)
    coords = np.array([embedding.coords[doc] for doc in doc_ids])
    iu, ju, deltas = _pair_arrays(distances)
    diff = coords[iu] - coords[ju]
    d_config = np.sqrt((diff * diff).sum(axis=1))
    order = np.lexsort((d_config, deltas))
    disparities = isotonic_fit(d_config[order])
    return [
        (float(deltas[p]), float(d_config[p]), float(disp))
        for p, disp in zip(order, disparities)
    ]
