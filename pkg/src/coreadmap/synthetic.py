"""Deterministic synthetic fixtures: planted-cluster corpora and a
reference map layout.

The planted corpus gives every library a home topic it mostly reads within,
which yields a known ground-truth partition for purity checks and pipeline
smoke tests. The reference layout reproduces a realistic 13-area, 91-document
map shape (readership counts included) for exercising the bubble layout and
the viewer payload without any real data.
"""

from __future__ import annotations

import math

import numpy as np

from .corpus import Document, UserLibrary
from .ordination import Embedding

THEMES = (
    "adaptive annotation networks",
    "collaborative filtering methods",
    "visual analytics dashboards",
    "peer assessment platforms",
    "semantic tagging systems",
    "mobile field experiments",
    "curriculum graph models",
    "open archive mining",
    "citation pattern studies",
    "interactive simulation labs",
    "crowd survey instruments",
    "knowledge graph curation",
    "digital archive preservation",
)

_JOURNALS = (
    "Journal of Synthetic Studies",
    "Annals of Generated Data",
    "Fixture Review Quarterly",
    "International Synthetic Letters",
)

_COUNTRIES = ("US", "UK", "DE", "BR", "JP")

# (documents, combined readers) per area of the reference 91-document map
REFERENCE_AREA_SHAPES = (
    (10, 2865),
    (11, 1477),
    (9, 1183),
    (4, 1175),
    (6, 1169),
    (9, 1049),
    (8, 993),
    (8, 991),
    (6, 648),
    (6, 637),
    (5, 615),
    (6, 483),
    (3, 345),
)


def planted_corpus(
    n_blobs: int = 3,
    docs_per_blob: int = 10,
    n_libraries: int = 60,
    docs_per_library: int = 10,
    within_rate: float = 0.9,
    seed: int = 0,
) -> tuple[list[Document], list[UserLibrary], dict[str, str]]:
    """Corpus with planted topics; returns (documents, libraries, true labels).

    Library i has home topic i mod n_blobs and draws Binomial(size,
    within_rate) of its documents from it (without replacement), the rest
    uniformly from the other topics. True labels map doc_id to its topic
    theme.
    """
    if n_blobs > len(THEMES):
        raise ValueError(f"at most {len(THEMES)} planted topics supported")
    if docs_per_library > n_blobs * docs_per_blob:
        raise ValueError("library size exceeds the corpus")

    documents: list[Document] = []
    labels: dict[str, str] = {}
    blob_docs: list[list[str]] = []
    for blob in range(n_blobs):
        theme = THEMES[blob]
        ids = []
        for i in range(docs_per_blob):
            doc_id = f"d{blob:02d}-{i:02d}"
            ids.append(doc_id)
            documents.append(
                Document(
                    doc_id=doc_id,
                    title=f"{theme} study {i:02d}".capitalize(),
                    abstract=f"Findings on {theme} from trial {i:02d}.",
                    year=1995 + (i * 7 + blob) % 18,
                    journal=_JOURNALS[(blob + i) % len(_JOURNALS)],
                    pub_type="journal-article",
                    language="en",
                )
            )
            labels[doc_id] = theme
        blob_docs.append(ids)

    libraries: list[UserLibrary] = []
    for lib_index in range(n_libraries):
        home = lib_index % n_blobs
        rng = np.random.default_rng([seed, lib_index])
        n_home = min(
            int(rng.binomial(docs_per_library, within_rate)), docs_per_blob
        )
        n_home = max(n_home, docs_per_library - (n_blobs - 1) * docs_per_blob)
        picks = list(
            rng.choice(blob_docs[home], size=n_home, replace=False)
        )
        others = [d for blob in range(n_blobs) if blob != home for d in blob_docs[blob]]
        n_other = docs_per_library - n_home
        if n_other > 0:
            picks.extend(rng.choice(others, size=n_other, replace=False))
        libraries.append(
            UserLibrary(
                user_id=f"u{lib_index:03d}",
                doc_ids=frozenset(str(p) for p in picks),
                country=_COUNTRIES[lib_index % len(_COUNTRIES)],
                discipline="synthetic studies",
                sub_discipline="subfield-a",
            )
        )
    return documents, libraries, labels


def _split_readers(total: int, n_docs: int) -> list[int]:
    """Split a reader total into n descending positive integers (deterministic)."""
    weights = list(range(n_docs, 0, -1))
    weight_sum = sum(weights)
    parts = [max(1, (total * w) // weight_sum) for w in weights]
    parts[0] += total - sum(parts)  # largest doc absorbs the rounding remainder
    return parts


def reference_layout_inputs(
    seed: int = 0,
) -> tuple[Embedding, dict[str, int], dict[int, str], dict[str, int], dict[str, Document]]:
    """Inputs for a 13-area, 91-document map in the reference shape.

    Returns (embedding, assignment, labels, readers, metadata). Area
    centers sit on a ring; member documents scatter around them. Document
    reader counts are a deterministic descending split of each area's
    combined readership.
    """
    rng = np.random.default_rng(seed)
    coords: dict[str, tuple[float, ...]] = {}
    assignment: dict[str, int] = {}
    labels: dict[int, str] = {}
    readers: dict[str, int] = {}
    metadata: dict[str, Document] = {}

    n_areas = len(REFERENCE_AREA_SHAPES)
    ring_radius = 10.0
    doc_no = 0
    for area_pos, (n_docs, reader_total) in enumerate(REFERENCE_AREA_SHAPES):
        index = area_pos + 1
        labels[index] = THEMES[area_pos].title()
        angle = 2.0 * math.pi * area_pos / n_areas
        cx, cy = ring_radius * math.cos(angle), ring_radius * math.sin(angle)
        doc_readers = _split_readers(reader_total, n_docs)
        for i in range(n_docs):
            doc_no += 1
            doc_id = f"doc-{doc_no:03d}"
            jitter = rng.normal(scale=0.8, size=2)
            coords[doc_id] = (cx + float(jitter[0]), cy + float(jitter[1]))
            assignment[doc_id] = index
            readers[doc_id] = doc_readers[i]
            metadata[doc_id] = Document(
                doc_id=doc_id,
                title=f"{THEMES[area_pos]} report {i:02d}".capitalize(),
                year=2000 + (doc_no % 12),
                journal=_JOURNALS[doc_no % len(_JOURNALS)],
                pub_type="journal-article",
                language="en",
            )

    embedding = Embedding(
        coords=coords,
        stress=0.2,
        r_squared=0.86,
        restarts_used=0,
        seed=seed,
    )
    return embedding, assignment, labels, readers, metadata
