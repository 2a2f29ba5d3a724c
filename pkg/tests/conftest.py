"""Shared fixtures: tiny corpora, taxonomies, and file writers."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import pytest

from coreadmap.corpus import Corpus, Document, SubjectTaxonomy, UserLibrary, normalize_journal


def make_corpus(lib_docs: dict[str, list[str]], documents: dict[str, Document] | None = None,
                **lib_fields) -> Corpus:
    """Corpus from {user_id: [doc_ids]}; documents are stubbed when omitted."""
    if documents is None:
        all_ids = sorted({d for ids in lib_docs.values() for d in ids})
        documents = {d: Document(doc_id=d, title=f"title {d}") for d in all_ids}
    libraries = tuple(
        UserLibrary(user_id=user_id, doc_ids=frozenset(ids), **lib_fields)
        for user_id, ids in sorted(lib_docs.items())
    )
    return Corpus(documents=documents, libraries=libraries)


def taxonomy_of(**entries: str) -> SubjectTaxonomy:
    """Taxonomy from journal-name keyword arguments (values = areas)."""
    return SubjectTaxonomy(
        entries={normalize_journal(name): area for name, area in entries.items()}
    )


@pytest.fixture
def tmp_corpus_files(tmp_path: Path):
    """Write a 2-library / 3-document corpus pair and return the paths."""

    def write(libraries: list[dict], documents: list[dict]) -> tuple[Path, Path]:
        lib_path = tmp_path / "libraries.ndjson"
        doc_path = tmp_path / "documents.ndjson"
        lib_path.write_text(
            "".join(json.dumps(r) + "\n" for r in libraries), encoding="utf-8"
        )
        doc_path.write_text(
            "".join(json.dumps(r) + "\n" for r in documents), encoding="utf-8"
        )
        return lib_path, doc_path

    return write


def write_taxonomy_csv(path: Path, rows: list[tuple[str, str]]) -> Path:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["journal_name", "subject_area"])
        writer.writerows(rows)
    return path
