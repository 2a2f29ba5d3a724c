"""Distributional analyses over a corpus: subject homogeneity, library
sizes, publication age and type, and geographic spread.

A "unit" is one user library; reference lists loaded in the libraries
format work identically, so the same rank aggregation serves both kinds of
collections. Only journal articles whose journal resolves through the
taxonomy participate in subject matching; everything else is excluded from
the matched counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import date
from typing import Optional, Sequence

from .corpus import Corpus, Document, SubjectTaxonomy, UserLibrary, match_journal


@dataclass(frozen=True)
class RankLine:
    rank: int
    mean_share: float  # percent
    sd_share: float  # percent


@dataclass
class RankedDistribution:
    """Per-rank mean/SD of subject-area shares, aggregated across units."""

    ranks: list[RankLine]
    tail_mean: float
    tail_sd: float
    tail_cutoff: int
    n_units: int


@dataclass
class LibrarySizeStats:
    mean: float
    sd: float
    median: float
    matched_mean: float
    matched_sd: float
    matched_median: float
    top_decile_share: float
    histogram: list[tuple[int, int, int]]  # (bin_start, bin_end, count)


@dataclass
class AgeTypeStats:
    median_age_years: float
    mean_age_years: float
    year_histogram: dict[int, int]
    type_counts: dict[str, int]
    journal_counts: dict[str, int]


@dataclass
class CountryDistribution:
    shares: dict[str, float]  # country -> fraction of users naming a country
    other_aggregate: float
    n_with_country: int
    n_countries: int
    merged_countries: list[str] = field(default_factory=list)


def _mean(values: Sequence[float]) -> float:
    return sum(values) / len(values)


def _sample_sd(values: Sequence[float]) -> float:
    if len(values) < 2:
        return 0.0
    m = _mean(values)
    return math.sqrt(sum((v - m) ** 2 for v in values) / (len(values) - 1))


def _median(values: Sequence[float]) -> float:
    """Median with even-length inputs averaging the two central order stats."""
    ordered = sorted(values)
    n = len(ordered)
    if n == 0:
        raise ValueError("median of empty sequence")
    mid = n // 2
    if n % 2 == 1:
        return float(ordered[mid])
    return (ordered[mid - 1] + ordered[mid]) / 2.0


def _matched_area(
    doc: Document, taxonomy: SubjectTaxonomy, cache: dict[str, Optional[str]]
) -> Optional[str]:
    if doc.pub_type != "journal-article" or not doc.journal:
        return None
    if doc.journal not in cache:
        match = match_journal(doc.journal, taxonomy)
        cache[doc.journal] = match.subject_area if match else None
    return cache[doc.journal]


def subject_distribution(
    corpus: Corpus, taxonomy: SubjectTaxonomy, rank_cutoff: int = 10
) -> RankedDistribution:
    """Rank-aggregated subject-area shares across units.

    Per unit, each matched journal article is attributed to its subject
    area; area shares (percent of the unit's matched articles) are sorted
    descending and aggregated rank-wise across units, padding absent ranks
    with zero so every unit's shares sum to 100. Ranks beyond the cutoff are
    summed into the tail. Units with no matched article are skipped.
    """
    cache: dict[str, Optional[str]] = {}
    per_unit_shares: list[list[float]] = []
    for lib in sorted(corpus.libraries, key=lambda l: l.user_id):
        area_counts: dict[str, int] = {}
        for doc_id in lib.doc_ids:
            area = _matched_area(corpus.documents[doc_id], taxonomy, cache)
            if area is not None:
                area_counts[area] = area_counts.get(area, 0) + 1
        total = sum(area_counts.values())
        if total == 0:
            continue
        shares = sorted((100.0 * c / total for c in area_counts.values()), reverse=True)
        per_unit_shares.append(shares)
    if not per_unit_shares:
        raise ValueError("no unit has any matched journal article")

    n_units = len(per_unit_shares)
    ranks = []
    for rank in range(1, rank_cutoff + 1):
        values = [shares[rank - 1] if len(shares) >= rank else 0.0 for shares in per_unit_shares]
        ranks.append(
            RankLine(rank=rank, mean_share=_mean(values), sd_share=_sample_sd(values))
        )
    tails = [sum(shares[rank_cutoff:]) for shares in per_unit_shares]
    return RankedDistribution(
        ranks=ranks,
        tail_mean=_mean(tails),
        tail_sd=_sample_sd(tails),
        tail_cutoff=rank_cutoff,
        n_units=n_units,
    )


def format_subject_table(dist: RankedDistribution) -> str:
    """Tabular report: rank, mean share, SD, percentages to two decimals."""
    lines = ["Subject Area\tMean\tSD"]
    for line in dist.ranks:
        lines.append(f"{line.rank}\t{line.mean_share:.2f}%\t{line.sd_share:.2f}%")
    lines.append(f">{dist.tail_cutoff}\t{dist.tail_mean:.2f}%\t{dist.tail_sd:.2f}%")
    return "\n".join(lines) + "\n"


def _log2_histogram(sizes: Sequence[int]) -> list[tuple[int, int, int]]:
    """Power-of-two bins [2^i, 2^(i+1)) over the positive sizes."""
    positive = [s for s in sizes if s >= 1]
    if not positive:
        return []
    top = max(positive)
    bins = []
    start = 1
    while start <= top:
        end = start * 2
        count = sum(1 for s in positive if start <= s < end)
        bins.append((start, end, count))
        start = end
    return bins


def library_size_stats(corpus: Corpus, taxonomy: SubjectTaxonomy) -> LibrarySizeStats:
    """Library size statistics, total and restricted to matched articles.

    The top-decile share is the fraction of all matched journal articles
    held by the largest tenth of libraries (by matched count, ceil of n/10
    libraries).
    """
    if not corpus.libraries:
        raise ValueError("corpus has no libraries")
    cache: dict[str, Optional[str]] = {}
    sizes: list[int] = []
    matched_sizes: list[int] = []
    for lib in sorted(corpus.libraries, key=lambda l: l.user_id):
        sizes.append(len(lib.doc_ids))
        matched = sum(
            1
            for doc_id in lib.doc_ids
            if _matched_area(corpus.documents[doc_id], taxonomy, cache) is not None
        )
        matched_sizes.append(matched)

    total_matched = sum(matched_sizes)
    top_n = math.ceil(len(matched_sizes) / 10)
    top = sorted(matched_sizes, reverse=True)[:top_n]
    top_share = sum(top) / total_matched if total_matched else 0.0

    return LibrarySizeStats(
        mean=_mean(sizes),
        sd=_sample_sd(sizes),
        median=_median(sizes),
        matched_mean=_mean(matched_sizes),
        matched_sd=_sample_sd(matched_sizes),
        matched_median=_median(matched_sizes),
        top_decile_share=top_share,
        histogram=_log2_histogram(matched_sizes),
    )


def publication_age_years(year: int, as_of: date) -> float:
    """Fractional age with the publication pinned to July 1 of its year."""
    published = date(year, 7, 1)
    return (as_of - published).days / 365.25


def age_type_stats(documents: Sequence[Document], as_of: date) -> AgeTypeStats:
    """Age/type/journal breakdown of a document set at a collection date."""
    ages = [
        publication_age_years(doc.year, as_of) for doc in documents if doc.year is not None
    ]
    if not ages:
        raise ValueError("no document has a publication year")
    year_histogram: dict[int, int] = {}
    type_counts: dict[str, int] = {}
    journal_counts: dict[str, int] = {}
    for doc in sorted(documents, key=lambda d: d.doc_id):
        type_counts[doc.pub_type] = type_counts.get(doc.pub_type, 0) + 1
        if doc.year is not None:
            year_histogram[doc.year] = year_histogram.get(doc.year, 0) + 1
        if doc.pub_type == "journal-article" and doc.journal:
            journal_counts[doc.journal] = journal_counts.get(doc.journal, 0) + 1
    return AgeTypeStats(
        median_age_years=_median(ages),
        mean_age_years=_mean(ages),
        year_histogram=dict(sorted(year_histogram.items())),
        type_counts=dict(sorted(type_counts.items())),
        journal_counts=dict(sorted(journal_counts.items(), key=lambda kv: (-kv[1], kv[0]))),
    )


def country_distribution(
    libraries: Sequence[UserLibrary], min_share_cutoff: float = 0.01
) -> CountryDistribution:
    """Share of users per listed country; sparse countries merge into Other."""
    counts: dict[str, int] = {}
    for lib in sorted(libraries, key=lambda l: l.user_id):
        country = (lib.country or "").strip()
        if country:
            counts[country] = counts.get(country, 0) + 1
    n = sum(counts.values())
    if n == 0:
        return CountryDistribution(shares={}, other_aggregate=0.0, n_with_country=0, n_countries=0)
    shares: dict[str, float] = {}
    merged: list[str] = []
    other = 0.0
    for country in sorted(counts, key=lambda c: (-counts[c], c)):
        share = counts[country] / n
        if share < min_share_cutoff:
            other += share
            merged.append(country)
        else:
            shares[country] = share
    return CountryDistribution(
        shares=shares,
        other_aggregate=other,
        n_with_country=n,
        n_countries=len(counts),
        merged_countries=merged,
    )
