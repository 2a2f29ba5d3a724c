"""Cluster labels from member titles and abstracts.

Candidates are word n-grams scored by length times in-text frequency: a
longer phrase carries more information and a frequent one is more
representative, so the product ranks label quality. The stopword list is
fixed and shipped here so labeling stays deterministic across locales.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from typing import Sequence

from .corpus import Document
from .errors import EmptyClusterTextError

STOPWORDS = frozenset(
    """
    a about above after again against all am an and any are as at be because
    been before being below between both but by can cannot could did do does
    doing down during each few for from further had has have having he her
    here hers herself him himself his how i if in into is it its itself just
    me more most my myself no nor not now of off on once only or other our
    ours ourselves out over own same she should so some such than that the
    their theirs them themselves then there these they this those through to
    too under until up very was we were what when where which while who whom
    why will with would you your yours yourself yourselves
    """.split()
)

_TOKEN = re.compile(r"[a-z0-9]+(?:[-'][a-z0-9]+)*")


@dataclass(frozen=True)
class LabelCandidate:
    phrase: str
    word_count: int
    frequency: int

    @property
    def score(self) -> int:
        return self.word_count * self.frequency


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens; internal hyphens and apostrophes stay attached."""
    return _TOKEN.findall(text.lower())


def _candidate_counts(token_lists: Sequence[list[str]], max_ngram: int) -> dict[str, tuple[int, int]]:
    counts: dict[str, tuple[int, int]] = {}
    for tokens in token_lists:
        for size in range(1, max_ngram + 1):
            for start in range(len(tokens) - size + 1):
                gram = tokens[start : start + size]
                if gram[0] in STOPWORDS or gram[-1] in STOPWORDS:
                    continue
                phrase = " ".join(gram)
                wc, freq = counts.get(phrase, (size, 0))
                counts[phrase] = (wc, freq + 1)
    return counts


def label_cluster(
    member_docs: Sequence[Document], max_ngram: int = 3, min_frequency: int = 2
) -> tuple[str, list[LabelCandidate]]:
    """Pick a display label for a cluster from its members' text.

    Returns the title-cased label and all surviving candidates ranked by
    score, then frequency, then alphabetically. Candidates below
    `min_frequency` are dropped unless nothing survives, in which case
    single occurrences are allowed (tiny clusters).
    """
    token_lists = [
        tokenize(" ".join(filter(None, (doc.title, doc.abstract))))
        for doc in member_docs
    ]
    counts = _candidate_counts([t for t in token_lists if t], max_ngram)
    if not counts:
        raise EmptyClusterTextError(
            "no label candidates: member documents have no usable text"
        )
    candidates = [
        LabelCandidate(phrase=p, word_count=wc, frequency=f)
        for p, (wc, f) in counts.items()
        if f >= min_frequency
    ]
    if not candidates:
        candidates = [
            LabelCandidate(phrase=p, word_count=wc, frequency=f)
            for p, (wc, f) in counts.items()
        ]
    candidates.sort(key=lambda c: (-c.score, -c.frequency, c.phrase))
    return candidates[0].phrase.title(), candidates


def load_label_overrides(path: str) -> dict[int, str]:
    """Read the cluster_index,label CSV used to curate generated labels."""
    overrides: dict[int, str] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"cluster_index", "label"}.issubset(
            reader.fieldnames
        ):
            raise ValueError(
                f"{path}: expected columns cluster_index, label"
            )
        for row in reader:
            overrides[int(row["cluster_index"])] = row["label"]
    return overrides
