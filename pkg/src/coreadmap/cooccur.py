"""Document selection by readership threshold and co-occurrence counting.

Two documents co-occur when at least one user library holds both. The matrix
is counted over ALL libraries (the selection scope only governs which
documents enter it), with very large libraries down-sampled to a fixed cap.
Cells record how many libraries hold both documents; pairs never held
together are missing, not zero, and so is the diagonal.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .corpus import Corpus
from .errors import NoDocumentsSelectedError


@dataclass(frozen=True)
class SelectionConfig:
    """Knobs for document selection and counting.

    threshold: minimum library occurrences (within scope) for a document to
        be analyzed; scope_filter: restrict the occurrence count to libraries
        of one sub-discipline; cap: per-library sampling cap for counting;
        seed: determinism for the sampling.
    """

    threshold: int = 16
    scope_filter: Optional[str] = None
    cap: int = 500
    seed: int = 0

    def __post_init__(self):
        if self.threshold < 1:
            raise ValueError("threshold must be >= 1")
        if self.cap < 1:
            raise ValueError("cap must be >= 1")


@dataclass
class CoOccurrenceMatrix:
    """Sparse symmetric co-occurrence counts over the selected documents.

    Only non-missing upper-triangle cells are materialized in `counts`,
    keyed by index pairs (i, j) with i < j into `doc_ids`. `readers` holds
    each document's occurrence count across all (unsampled) libraries.
    """

    doc_ids: tuple[str, ...]
    counts: dict[tuple[int, int], int]
    readers: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.doc_ids)

    def cell(self, i: int, j: int) -> Optional[int]:
        """Count for the unordered pair, or None when missing (incl. diagonal)."""
        if i == j:
            return None
        key = (i, j) if i < j else (j, i)
        return self.counts.get(key)

    def to_dense(self) -> np.ndarray:
        """Dense float matrix with NaN in every missing cell."""
        dense = np.full((self.n, self.n), np.nan)
        for (i, j), count in self.counts.items():
            dense[i, j] = count
            dense[j, i] = count
        return dense

    def write_csv(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["doc_id_a", "doc_id_b", "count"])
            for (i, j) in sorted(self.counts):
                writer.writerow([self.doc_ids[i], self.doc_ids[j], self.counts[(i, j)]])


def occurrence_counts(corpus: Corpus, scope_filter: Optional[str] = None) -> dict[str, int]:
    """Number of libraries holding each document, optionally scope-filtered."""
    counts: dict[str, int] = {}
    for lib in corpus.libraries:
        if scope_filter is not None and lib.sub_discipline != scope_filter:
            continue
        for doc_id in lib.doc_ids:
            counts[doc_id] = counts.get(doc_id, 0) + 1
    return counts


def select_documents(corpus: Corpus, config: SelectionConfig) -> list[str]:
    """Documents whose in-scope occurrence count clears the threshold.

    Sorted by descending count, ties broken by ascending doc_id.
    """
    if config.scope_filter is not None and not any(
        lib.sub_discipline == config.scope_filter for lib in corpus.libraries
    ):
        raise ValueError(f"no library carries sub_discipline {config.scope_filter!r}")
    counts = occurrence_counts(corpus, config.scope_filter)
    selected = [d for d, c in counts.items() if c >= config.threshold]
    if not selected:
        raise NoDocumentsSelectedError(
            config.threshold, max(counts.values(), default=0)
        )
    selected.sort(key=lambda d: (-counts[d], d))
    return selected


def library_sample(doc_ids: frozenset[str], user_id: str, cap: int, seed: int) -> frozenset[str]:
    """Down-sample a library to `cap` documents, uniformly without replacement.

    The generator is keyed on (seed, user_id) so a library's sample never
    changes when unrelated libraries are added or reordered.
    """
    if len(doc_ids) <= cap:
        return doc_ids
    user_key = int.from_bytes(hashlib.sha256(user_id.encode("utf-8")).digest()[:8], "big")
    rng = np.random.default_rng([seed, user_key])
    ordered = sorted(doc_ids)
    picked = rng.choice(len(ordered), size=cap, replace=False)
    return frozenset(ordered[k] for k in picked)


def build_cooccurrence(
    corpus: Corpus, selected: list[str], config: SelectionConfig
) -> CoOccurrenceMatrix:
    """Count joint library membership for every selected-document pair.

    Counting runs over all libraries regardless of the selection scope;
    libraries above the cap contribute only their sampled subset. Reader
    counts are taken over the full, unsampled libraries.
    """
    if not selected:
        raise ValueError("selected document list is empty")
    index = {doc_id: k for k, doc_id in enumerate(selected)}
    counts: dict[tuple[int, int], int] = {}
    readers = [0] * len(selected)
    for lib in corpus.libraries:
        for doc_id in lib.doc_ids:
            k = index.get(doc_id)
            if k is not None:
                readers[k] += 1
        members = library_sample(lib.doc_ids, lib.user_id, config.cap, config.seed)
        present = sorted(index[d] for d in members if d in index)
        for i, j in combinations(present, 2):
            counts[(i, j)] = counts.get((i, j), 0) + 1
    return CoOccurrenceMatrix(
        doc_ids=tuple(selected), counts=counts, readers=tuple(readers)
    )
