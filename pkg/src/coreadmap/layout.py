"""Topic-area bubbles and force-directed document placement.

Areas are circles centered on the mean of their members' ordination
coordinates and sized by combined readership (radius grows with the square
root, keeping bubble area proportional to readers). Documents are glyphs
pulled toward their area's center when outside it, with pairwise collision
resolution, until every glyph sits inside its bubble and none overlap.
Document positions after settling encode membership, not similarity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .corpus import Document
from .errors import AreaCapacityError
from .ordination import Embedding

GLYPH_RATIO = 0.45  # glyph scale relative to area scale; keeps packing loose
MAX_INITIAL_OVERLAP = 0.10  # bubble pair overlap budget, fraction of radius sum


@dataclass
class TopicArea:
    index: int
    label: str
    centroid: tuple[float, float]
    radius: float
    num_docs: int
    num_readers: int
    readership_share: float


@dataclass
class PlacedDocument:
    doc_id: str
    area: int
    x: float
    y: float
    radius: float
    readers: int
    title: str = ""
    year: Optional[int] = None
    journal: Optional[str] = None
    pub_type: str = "other"


@dataclass
class Provenance:
    threshold: int
    k: int
    stress: float
    r_squared: float
    seed: int
    timestamps: dict = field(default_factory=dict)


@dataclass
class DomainMap:
    areas: list[TopicArea]
    documents: list[PlacedDocument]
    provenance: Provenance


def _auto_area_scale(
    centroids: Mapping[int, tuple[float, float]], readers: Mapping[int, int]
) -> float:
    """Largest bubble scale keeping pairwise overlap within the 10% budget."""
    indices = sorted(centroids)
    best = math.inf
    for a_pos, a in enumerate(indices):
        for b in indices[a_pos + 1 :]:
            dist = math.hypot(
                centroids[a][0] - centroids[b][0], centroids[a][1] - centroids[b][1]
            )
            root_sum = math.sqrt(readers[a]) + math.sqrt(readers[b])
            if root_sum > 0:
                best = min(best, dist / ((1.0 - MAX_INITIAL_OVERLAP) * root_sum))
    if not math.isfinite(best) or best <= 0:
        # single area or coincident centroids: fall back to a unit-ish scale
        spread = 1.0
        if centroids:
            xs = [c[0] for c in centroids.values()]
            ys = [c[1] for c in centroids.values()]
            spread = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        max_root = max((math.sqrt(r) for r in readers.values()), default=1.0)
        best = spread / (2.0 * max_root) if max_root > 0 else 1.0
    return best


def make_areas(
    embedding: Embedding,
    assignment: Mapping[str, int],
    labels: Mapping[int, str],
    readers: Mapping[str, int],
    area_scale: Optional[float] = None,
) -> list[TopicArea]:
    """Build the topic-area list: centroids, readership sums, shares, radii.

    When `area_scale` is not given it is chosen automatically so that no two
    bubbles initially overlap by more than 10% of their radius sum.
    """
    clusters = sorted(set(assignment.values()))
    members: dict[int, list[str]] = {c: [] for c in clusters}
    for doc_id, cluster in sorted(assignment.items()):
        members[cluster].append(doc_id)
    for cluster, docs in members.items():
        if not docs:
            raise ValueError(f"cluster {cluster} has no members")

    centroids: dict[int, tuple[float, float]] = {}
    area_readers: dict[int, int] = {}
    for cluster, docs in members.items():
        xs = [embedding.coords[d][0] for d in docs]
        ys = [embedding.coords[d][1] for d in docs]
        centroids[cluster] = (sum(xs) / len(xs), sum(ys) / len(ys))
        area_readers[cluster] = sum(readers[d] for d in docs)

    total_readers = sum(area_readers.values())
    if total_readers <= 0:
        raise ValueError("total readership is zero")
    scale = area_scale if area_scale is not None else _auto_area_scale(centroids, area_readers)

    return [
        TopicArea(
            index=cluster,
            label=labels.get(cluster, f"area-{cluster:02d}"),
            centroid=centroids[cluster],
            radius=scale * math.sqrt(area_readers[cluster]),
            num_docs=len(members[cluster]),
            num_readers=area_readers[cluster],
            readership_share=area_readers[cluster] / total_readers,
        )
        for cluster in clusters
    ]


def place_documents(
    embedding: Embedding,
    assignment: Mapping[str, int],
    areas: Sequence[TopicArea],
    readers: Mapping[str, int],
    metadata: Optional[Mapping[str, Document]] = None,
    glyph_ratio: float = GLYPH_RATIO,
) -> list[PlacedDocument]:
    """Initial glyphs at the ordination coordinates, sized by readership.

    The glyph scale is tied to the area scale so the summed glyph area stays
    a fixed fraction of each bubble's area regardless of readership skew.
    """
    by_index = {area.index: area for area in areas}
    # recover the area scale from any bubble: radius = scale * sqrt(readers)
    sample = next(iter(by_index.values()))
    area_scale = sample.radius / math.sqrt(sample.num_readers)
    glyph_scale = glyph_ratio * area_scale
    placed = []
    for doc_id in sorted(assignment):
        cluster = assignment[doc_id]
        x, y = embedding.coords[doc_id]
        meta = metadata.get(doc_id) if metadata else None
        placed.append(
            PlacedDocument(
                doc_id=doc_id,
                area=cluster,
                x=float(x),
                y=float(y),
                radius=glyph_scale * math.sqrt(max(readers[doc_id], 1)),
                readers=readers[doc_id],
                title=meta.title if meta else "",
                year=meta.year if meta else None,
                journal=meta.journal if meta else None,
                pub_type=meta.pub_type if meta else "other",
            )
        )
    return placed


def _check_capacity(areas: Sequence[TopicArea], documents: Sequence[PlacedDocument]):
    glyph_area: dict[int, float] = {a.index: 0.0 for a in areas}
    max_glyph: dict[int, float] = {a.index: 0.0 for a in areas}
    for doc in documents:
        glyph_area[doc.area] += doc.radius**2
        max_glyph[doc.area] = max(max_glyph[doc.area], doc.radius)
    for area in areas:
        if max_glyph[area.index] > area.radius:
            raise AreaCapacityError(
                f"area {area.index}: a glyph (r={max_glyph[area.index]:.3g}) exceeds "
                f"the bubble (r={area.radius:.3g}); increase the area scale"
            )
        if glyph_area[area.index] > 0.7 * area.radius**2:
            raise AreaCapacityError(
                f"area {area.index}: glyphs cannot pack into the bubble; "
                "increase the area scale"
            )


def settle_documents(
    areas: Sequence[TopicArea],
    documents: Sequence[PlacedDocument],
    max_iter: int = 1000,
    seed: int = 0,
) -> tuple[list[PlacedDocument], int, list[str]]:
    """Pull stray documents into their bubbles and separate overlapping glyphs.

    Each iteration resolves glyph collisions (overlapping pairs move apart
    along their center line, half the overlap each) and steps documents
    outside their bubble toward its gravitational center. Returns the final
    placements, iterations used, and any warnings. Deterministic for a given
    seed: the generator only breaks exact position ties.
    """
    _check_capacity(areas, documents)
    by_index = {a.index: a for a in areas}
    rng = np.random.default_rng(seed)
    n = len(documents)
    pos = np.array([[d.x, d.y] for d in documents], dtype=float)
    rad = np.array([d.radius for d in documents], dtype=float)
    centers = np.array([by_index[d.area].centroid for d in documents], dtype=float)
    bounds = np.array(
        [by_index[d.area].radius - d.radius for d in documents], dtype=float
    )
    warnings: list[str] = []
    pad = 1e-9  # strict separation margin

    cell = 2.0 * float(rad.max()) if n else 1.0

    def colliding_pairs() -> list[tuple[int, int]]:
        # spatial binning: only neighbors in the 3x3 cell block can touch
        grid: dict[tuple[int, int], list[int]] = {}
        for idx in range(n):
            key = (int(pos[idx, 0] // cell), int(pos[idx, 1] // cell))
            grid.setdefault(key, []).append(idx)
        pairs = []
        for (gx, gy), cell_docs in grid.items():
            neighborhood: list[int] = []
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    neighborhood.extend(grid.get((gx + dx, gy + dy), []))
            for i in cell_docs:
                for j in neighborhood:
                    if j <= i:
                        continue
                    limit = rad[i] + rad[j]
                    if abs(pos[i, 0] - pos[j, 0]) > limit:
                        continue
                    d = float(np.hypot(*(pos[i] - pos[j])))
                    if d < limit:
                        pairs.append((i, j))
        return sorted(set(pairs))

    iterations = 0
    for iterations in range(1, max_iter + 1):
        moved = False
        for i, j in colliding_pairs():
            delta = pos[i] - pos[j]
            dist = float(np.hypot(*delta))
            if dist < 1e-12:
                angle = rng.uniform(0.0, 2.0 * math.pi)
                delta = np.array([math.cos(angle), math.sin(angle)])
                dist = 1.0
            overlap = rad[i] + rad[j] - dist
            if overlap <= 0:
                continue
            shift = (overlap / 2.0 + pad) * delta / dist
            pos[i] += shift
            pos[j] -= shift
            moved = True
        offsets = pos - centers
        dist = np.hypot(offsets[:, 0], offsets[:, 1])
        outside = dist > bounds
        for idx in np.nonzero(outside)[0]:
            if dist[idx] < 1e-12:
                continue  # at the center already; bounds < 0 is a capacity bug
            # aim just inside the allowed ring so the result is strictly interior
            target = centers[idx] + offsets[idx] * (0.98 * bounds[idx] / dist[idx])
            pos[idx] += 0.6 * (target - pos[idx])
            moved = True
        overlaps = bool(colliding_pairs())
        stray = bool((np.hypot(*(pos - centers).T) > bounds + 1e-9).any())
        if not overlaps and not stray:
            break
        if not moved:
            break
    else:
        iterations = max_iter

    if colliding_pairs() or (np.hypot(*(pos - centers).T) > bounds + 1e-9).any():
        warnings.append(
            f"settling stopped after {iterations} iterations with residual "
            "overlaps or stray documents"
        )

    settled = []
    for idx, doc in enumerate(documents):
        settled.append(
            PlacedDocument(
                doc_id=doc.doc_id,
                area=doc.area,
                x=float(pos[idx, 0]),
                y=float(pos[idx, 1]),
                radius=doc.radius,
                readers=doc.readers,
                title=doc.title,
                year=doc.year,
                journal=doc.journal,
                pub_type=doc.pub_type,
            )
        )
    return settled, iterations, warnings


def export_map(domain_map: DomainMap, path: str) -> None:
    """Write the map payload; this file is the contract the viewer consumes."""
    if not domain_map.areas:
        raise ValueError("map has no topic areas")
    if not domain_map.documents:
        raise ValueError("map has no documents")
    docs_per_area = {a.index: 0 for a in domain_map.areas}
    for doc in domain_map.documents:
        if doc.area not in docs_per_area:
            raise ValueError(f"document {doc.doc_id!r} references unknown area {doc.area}")
        docs_per_area[doc.area] += 1
    empty = [index for index, count in docs_per_area.items() if count == 0]
    if empty:
        raise ValueError(f"refusing to export empty areas: {empty}")

    payload = {
        "areas": [
            {
                "index": a.index,
                "label": a.label,
                "centroid": [a.centroid[0], a.centroid[1]],
                "radius": a.radius,
                "readers": a.num_readers,
                "share": a.readership_share,
            }
            for a in domain_map.areas
        ],
        "documents": [
            {
                "doc_id": d.doc_id,
                "area": d.area,
                "x": d.x,
                "y": d.y,
                "radius": d.radius,
                "title": d.title,
                "year": d.year,
                "journal": d.journal,
                "pub_type": d.pub_type,
                "readers": d.readers,
            }
            for d in domain_map.documents
        ],
        "provenance": {
            "threshold": domain_map.provenance.threshold,
            "k": domain_map.provenance.k,
            "stress": domain_map.provenance.stress,
            "r_squared": domain_map.provenance.r_squared,
            "seed": domain_map.provenance.seed,
            "timestamps": domain_map.provenance.timestamps,
        },
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")


def load_map(path: str) -> DomainMap:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    areas = [
        TopicArea(
            index=a["index"],
            label=a["label"],
            centroid=(a["centroid"][0], a["centroid"][1]),
            radius=a["radius"],
            num_docs=0,
            num_readers=a["readers"],
            readership_share=a["share"],
        )
        for a in payload["areas"]
    ]
    documents = [
        PlacedDocument(
            doc_id=d["doc_id"],
            area=d["area"],
            x=d["x"],
            y=d["y"],
            radius=d["radius"],
            readers=d["readers"],
            title=d["title"],
            year=d["year"],
            journal=d["journal"],
            pub_type=d["pub_type"],
        )
        for d in payload["documents"]
    ]
    counts: dict[int, int] = {}
    for d in documents:
        counts[d.area] = counts.get(d.area, 0) + 1
    for area in areas:
        area.num_docs = counts.get(area.index, 0)
    prov = payload["provenance"]
    return DomainMap(
        areas=areas,
        documents=documents,
        provenance=Provenance(
            threshold=prov["threshold"],
            k=prov["k"],
            stress=prov["stress"],
            r_squared=prov["r_squared"],
            seed=prov["seed"],
            timestamps=prov.get("timestamps", {}),
        ),
    )
