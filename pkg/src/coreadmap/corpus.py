"""Corpus ingestion: user libraries, document metadata, and the journal taxonomy.

Input files are newline-delimited JSON (libraries, documents) and two-column
CSV (taxonomy); see the README for the exact record layouts. Everything loaded
here is immutable afterwards, so a corpus can be shared across threads.
"""

from __future__ import annotations

import csv
import json
import re
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .errors import RecordFormatError

PUB_TYPES = frozenset(
    {"journal-article", "report", "book", "book-chapter", "conference-paper", "other"}
)

YEAR_MIN = 1500
YEAR_MAX = 2100


@dataclass(frozen=True)
class Document:
    """Metadata for one catalogued document."""

    doc_id: str
    title: str
    abstract: Optional[str] = None
    year: Optional[int] = None
    journal: Optional[str] = None
    pub_type: str = "other"
    language: Optional[str] = None

    def __post_init__(self):
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")
        if self.pub_type not in PUB_TYPES:
            raise ValueError(f"unknown pub_type {self.pub_type!r}")
        if self.year is not None and not (YEAR_MIN <= self.year <= YEAR_MAX):
            raise ValueError(f"implausible year {self.year!r}")


@dataclass(frozen=True)
class UserLibrary:
    """One user's saved document set plus the profile fields we analyze."""

    user_id: str
    doc_ids: frozenset[str]
    country: Optional[str] = None
    discipline: Optional[str] = None
    sub_discipline: Optional[str] = None


@dataclass(frozen=True)
class Corpus:
    documents: Mapping[str, Document]
    libraries: tuple[UserLibrary, ...]


@dataclass(frozen=True)
class SubjectTaxonomy:
    """Mapping from normalized journal name to subject-area name.

    Keys must already be in normalized form (loading normalizes them), which
    makes lookups idempotent with respect to :func:`normalize_journal`.
    """

    entries: Mapping[str, str]

    def __post_init__(self):
        for key in self.entries:
            if normalize_journal(key) != key:
                raise ValueError(f"taxonomy key not in normalized form: {key!r}")

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class JournalMatch:
    subject_area: str
    match_kind: str  # "exact" | "near-miss"
    matched_entry: str
    distance: int = 0


# Dash-like punctuation stripped alongside ASCII '-': en dash, em dash, minus.
_REMOVED_CHARS = re.compile(r"[:,\-‐‑‒–—−]")
_WHITESPACE = re.compile(r"\s+")


def normalize_journal(name: str) -> str:
    """Canonicalize a journal name for comparison.

    Steps, in order: transliterate accented Latin to plain ASCII letters
    (decompose and drop combining marks; non-Latin scripts pass through),
    lowercase, remove colons/commas/dashes, collapse whitespace, strip, and
    drop one leading definite article "the ". Idempotent.
    """
    decomposed = unicodedata.normalize("NFKD", name)
    stripped = "".join(c for c in decomposed if not unicodedata.combining(c))
    lowered = stripped.lower()
    lowered = _REMOVED_CHARS.sub("", lowered)
    lowered = _WHITESPACE.sub(" ", lowered).strip()
    if lowered.startswith("the "):
        lowered = lowered[4:]
    return lowered


def edit_distance_bounded(a: str, b: str, limit: int) -> Optional[int]:
    """Levenshtein distance if it is <= limit, else None.

    Banded dynamic program: rows outside the diagonal band of width `limit`
    can never lead to a distance within the limit.
    """
    if abs(len(a) - len(b)) > limit:
        return None
    if a == b:
        return 0
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i] + [limit + 1] * len(b)
        lo = max(1, i - limit)
        hi = min(len(b), i + limit)
        for j in range(lo, hi + 1):
            cost = 0 if ca == b[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        if min(cur[max(0, i - limit): hi + 1]) > limit:
            return None
        prev = cur
    return prev[len(b)] if prev[len(b)] <= limit else None


def match_journal(
    name: str,
    taxonomy: SubjectTaxonomy,
    near_miss_limit: int = 2,
    review: Optional[list] = None,
) -> Optional[JournalMatch]:
    """Resolve a journal name to a subject area.

    Exact match on normalized names wins. Failing that, a near-miss is
    accepted when exactly one taxonomy entry sits at the minimum edit
    distance and that distance is <= `near_miss_limit`. Near-misses are
    appended to `review` (when given) so a human can audit them, mirroring
    the manual check this rule stands in for.
    """
    if not taxonomy.entries:
        raise ValueError("taxonomy is empty")
    normalized = normalize_journal(name)
    area = taxonomy.entries.get(normalized)
    if area is not None:
        return JournalMatch(subject_area=area, match_kind="exact", matched_entry=normalized)

    best_distance = near_miss_limit + 1
    best_entries: list[str] = []
    for entry in taxonomy.entries:
        d = edit_distance_bounded(normalized, entry, near_miss_limit)
        if d is None:
            continue
        if d < best_distance:
            best_distance = d
            best_entries = [entry]
        elif d == best_distance:
            best_entries.append(entry)
    if best_distance <= near_miss_limit and len(best_entries) == 1:
        entry = best_entries[0]
        match = JournalMatch(
            subject_area=taxonomy.entries[entry],
            match_kind="near-miss",
            matched_entry=entry,
            distance=best_distance,
        )
        if review is not None:
            review.append((name, entry, match.subject_area, best_distance))
        return match
    return None


def _require(record: dict, field_name: str, path: str, line_no: int):
    if field_name not in record or record[field_name] is None:
        raise RecordFormatError(path, line_no, field_name, "missing required field")
    return record[field_name]


def _parse_document(record: dict, path: str, line_no: int) -> Document:
    doc_id = _require(record, "doc_id", path, line_no)
    title = _require(record, "title", path, line_no)
    if not isinstance(doc_id, str) or not doc_id:
        raise RecordFormatError(path, line_no, "doc_id", "must be a non-empty string")
    if not isinstance(title, str):
        raise RecordFormatError(path, line_no, "title", "must be a string")
    year = record.get("year")
    if year is not None:
        if not isinstance(year, int) or isinstance(year, bool):
            raise RecordFormatError(path, line_no, "year", "must be an integer")
        if not (YEAR_MIN <= year <= YEAR_MAX):
            raise RecordFormatError(
                path, line_no, "year", f"implausible calendar year {year}"
            )
    pub_type = record.get("pub_type") or "other"
    if pub_type not in PUB_TYPES:
        raise RecordFormatError(
            path, line_no, "pub_type", f"must be one of {sorted(PUB_TYPES)}"
        )
    return Document(
        doc_id=doc_id,
        title=title,
        abstract=record.get("abstract"),
        year=year,
        journal=record.get("journal"),
        pub_type=pub_type,
        language=record.get("language"),
    )


def _parse_library(record: dict, path: str, line_no: int) -> UserLibrary:
    user_id = _require(record, "user_id", path, line_no)
    doc_ids = _require(record, "doc_ids", path, line_no)
    if not isinstance(user_id, str) or not user_id:
        raise RecordFormatError(path, line_no, "user_id", "must be a non-empty string")
    if not isinstance(doc_ids, list) or not all(isinstance(d, str) for d in doc_ids):
        raise RecordFormatError(path, line_no, "doc_ids", "must be an array of strings")
    return UserLibrary(
        user_id=user_id,
        doc_ids=frozenset(doc_ids),  # duplicates collapse silently
        country=record.get("country"),
        discipline=record.get("discipline"),
        sub_discipline=record.get("sub_discipline"),
    )


def _iter_ndjson(path: str) -> Iterable[tuple[int, dict]]:
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise RecordFormatError(path, line_no, "json", str(exc)) from exc
            if not isinstance(record, dict):
                raise RecordFormatError(path, line_no, "json", "record must be an object")
            yield line_no, record


def load_corpus(
    libraries_path: str, documents_path: str
) -> tuple[Corpus, list[tuple[str, str]]]:
    """Load and cross-reference the libraries and documents files.

    Returns the corpus plus a warning list of (user_id, doc_id) pairs for
    library entries that reference unknown documents. Dangling ids are
    dropped from the library so every remaining id resolves.
    """
    documents: dict[str, Document] = {}
    for line_no, record in _iter_ndjson(documents_path):
        doc = _parse_document(record, documents_path, line_no)
        if doc.doc_id in documents:
            raise RecordFormatError(
                documents_path, line_no, "doc_id", f"duplicate doc_id {doc.doc_id!r}"
            )
        documents[doc.doc_id] = doc

    libraries: list[UserLibrary] = []
    warnings: list[tuple[str, str]] = []
    seen_users: set[str] = set()
    for line_no, record in _iter_ndjson(libraries_path):
        lib = _parse_library(record, libraries_path, line_no)
        if lib.user_id in seen_users:
            raise RecordFormatError(
                libraries_path, line_no, "user_id", f"duplicate user_id {lib.user_id!r}"
            )
        seen_users.add(lib.user_id)
        dangling = sorted(d for d in lib.doc_ids if d not in documents)
        if dangling:
            warnings.extend((lib.user_id, d) for d in dangling)
            lib = UserLibrary(
                user_id=lib.user_id,
                doc_ids=frozenset(d for d in lib.doc_ids if d in documents),
                country=lib.country,
                discipline=lib.discipline,
                sub_discipline=lib.sub_discipline,
            )
        libraries.append(lib)

    return Corpus(documents=documents, libraries=tuple(libraries)), warnings


def load_taxonomy(path: str) -> SubjectTaxonomy:
    """Read the journal_name,subject_area CSV; names are normalized on load."""
    entries: dict[str, str] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {
            "journal_name",
            "subject_area",
        }.issubset(reader.fieldnames):
            raise RecordFormatError(
                path, 1, "header", "expected columns journal_name, subject_area"
            )
        for line_no, row in enumerate(reader, start=2):
            name = row.get("journal_name")
            area = row.get("subject_area")
            if not name or not area:
                raise RecordFormatError(path, line_no, "journal_name", "empty cell")
            entries[normalize_journal(name)] = area
    return SubjectTaxonomy(entries=entries)


def save_corpus(
    documents: Iterable[Document],
    libraries: Iterable[UserLibrary],
    documents_path: str,
    libraries_path: str,
) -> None:
    """Write corpus files in the ingestion format (used for fixtures/demos)."""
    with open(documents_path, "w", encoding="utf-8") as fh:
        for doc in documents:
            fh.write(
                json.dumps(
                    {
                        "doc_id": doc.doc_id,
                        "title": doc.title,
                        "abstract": doc.abstract,
                        "year": doc.year,
                        "journal": doc.journal,
                        "pub_type": doc.pub_type,
                        "language": doc.language,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
    with open(libraries_path, "w", encoding="utf-8") as fh:
        for lib in libraries:
            fh.write(
                json.dumps(
                    {
                        "user_id": lib.user_id,
                        "country": lib.country,
                        "discipline": lib.discipline,
                        "sub_discipline": lib.sub_discipline,
                        "doc_ids": sorted(lib.doc_ids),
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
