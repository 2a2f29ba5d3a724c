import math

import numpy as np
import pytest

from coreadmap.errors import AreaCapacityError
from coreadmap.layout import (
    DomainMap,
    PlacedDocument,
    Provenance,
    TopicArea,
    export_map,
    load_map,
    make_areas,
    place_documents,
    settle_documents,
)
from coreadmap.ordination import Embedding
from coreadmap.synthetic import reference_layout_inputs


def embedding_of(coords: dict[str, tuple[float, float]]) -> Embedding:
    return Embedding(coords=coords, stress=0.1, r_squared=0.9, restarts_used=1, seed=0)


def check_no_overlaps(documents):
    for i in range(len(documents)):
        for j in range(i + 1, len(documents)):
            a, b = documents[i], documents[j]
            dist = math.hypot(a.x - b.x, a.y - b.y)
            assert dist >= a.radius + b.radius - 1e-9, (a.doc_id, b.doc_id)


def check_containment(areas, documents):
    by_index = {a.index: a for a in areas}
    for doc in documents:
        area = by_index[doc.area]
        dist = math.hypot(doc.x - area.centroid[0], doc.y - area.centroid[1])
        assert dist + doc.radius <= area.radius + 1e-9, doc.doc_id
        assert dist < area.radius  # position strictly inside the bubble


class TestMakeAreas:
    def test_reference_fixture_matches_known_shape(self):
        emb, assignment, labels, readers, _meta = reference_layout_inputs(seed=0)
        areas = make_areas(emb, assignment, labels, readers)
        assert len(areas) == 13
        largest = max(areas, key=lambda a: a.num_readers)
        assert largest.num_docs == 10
        assert largest.num_readers == 2865
        assert largest.readership_share == pytest.approx(0.210, abs=5e-4)
        assert sum(a.num_docs for a in areas) == 91
        assert sum(a.num_readers for a in areas) == 13630

    def test_single_member_centroid(self):
        emb = embedding_of({"a": (1.0, 2.0)})
        areas = make_areas(emb, {"a": 1}, {1: "solo"}, {"a": 10})
        assert areas[0].centroid == (1.0, 2.0)
        assert areas[0].num_docs == 1

    def test_radius_sqrt_encoding(self):
        emb = embedding_of({"a": (0.0, 0.0), "b": (10.0, 0.0)})
        areas = make_areas(emb, {"a": 1, "b": 2}, {}, {"a": 100, "b": 400})
        by_index = {a.index: a for a in areas}
        assert by_index[2].radius == pytest.approx(2 * by_index[1].radius)

    def test_radius_monotone_in_readers(self):
        emb, assignment, labels, readers, _meta = reference_layout_inputs(seed=1)
        areas = make_areas(emb, assignment, labels, readers)
        ordered = sorted(areas, key=lambda a: a.num_readers)
        for smaller, bigger in zip(ordered, ordered[1:]):
            if bigger.num_readers > smaller.num_readers:
                assert bigger.radius > smaller.radius

    def test_share_sums_to_one(self):
        emb, assignment, labels, readers, _meta = reference_layout_inputs(seed=2)
        areas = make_areas(emb, assignment, labels, readers)
        assert sum(a.readership_share for a in areas) == pytest.approx(1.0, abs=1e-9)

    def test_initial_bubble_overlap_within_budget(self):
        emb, assignment, labels, readers, _meta = reference_layout_inputs(seed=0)
        areas = make_areas(emb, assignment, labels, readers)
        for i in range(len(areas)):
            for j in range(i + 1, len(areas)):
                a, b = areas[i], areas[j]
                dist = math.hypot(
                    a.centroid[0] - b.centroid[0], a.centroid[1] - b.centroid[1]
                )
                overlap = a.radius + b.radius - dist
                assert overlap <= 0.10 * (a.radius + b.radius) + 1e-9

    def test_centroid_is_member_mean(self):
        emb = embedding_of({"a": (0.0, 0.0), "b": (2.0, 4.0), "c": (4.0, 2.0)})
        areas = make_areas(emb, {"a": 1, "b": 1, "c": 1}, {1: "x"}, {"a": 1, "b": 1, "c": 1})
        assert areas[0].centroid == pytest.approx((2.0, 2.0))


class TestSettleDocuments:
    def test_coincident_glyphs_separate(self):
        area = TopicArea(
            index=1,
            label="x",
            centroid=(0.0, 0.0),
            radius=10.0,
            num_docs=2,
            num_readers=8,
            readership_share=1.0,
        )
        docs = [
            PlacedDocument(doc_id="a", area=1, x=1.0, y=1.0, radius=1.0, readers=4),
            PlacedDocument(doc_id="b", area=1, x=1.0, y=1.0, radius=1.0, readers=4),
        ]
        settled, _iters, warnings = settle_documents([area], docs, max_iter=200, seed=0)
        assert warnings == []
        a, b = settled
        assert math.hypot(a.x - b.x, a.y - b.y) >= a.radius + b.radius

    def test_outside_document_pulled_inside(self):
        area = TopicArea(
            index=1,
            label="x",
            centroid=(0.0, 0.0),
            radius=5.0,
            num_docs=1,
            num_readers=4,
            readership_share=1.0,
        )
        docs = [
            PlacedDocument(doc_id="a", area=1, x=40.0, y=0.0, radius=1.0, readers=4)
        ]
        settled, _iters, warnings = settle_documents([area], docs, max_iter=500, seed=0)
        assert warnings == []
        check_containment([area], settled)

    def test_reference_fixture_settles_clean(self):
        emb, assignment, labels, readers, meta = reference_layout_inputs(seed=0)
        areas = make_areas(emb, assignment, labels, readers)
        placed = place_documents(emb, assignment, areas, readers, meta)
        settled, iterations, warnings = settle_documents(
            areas, placed, max_iter=1000, seed=0
        )
        assert warnings == []
        assert iterations <= 1000
        check_no_overlaps(settled)
        check_containment(areas, settled)

    def test_deterministic_given_seed(self):
        emb, assignment, labels, readers, meta = reference_layout_inputs(seed=0)
        areas = make_areas(emb, assignment, labels, readers)
        placed = place_documents(emb, assignment, areas, readers, meta)
        first, _, _ = settle_documents(areas, placed, max_iter=1000, seed=5)
        second, _, _ = settle_documents(areas, placed, max_iter=1000, seed=5)
        assert [(d.x, d.y) for d in first] == [(d.x, d.y) for d in second]

    def test_overfull_bubble_rejected(self):
        area = TopicArea(
            index=1,
            label="x",
            centroid=(0.0, 0.0),
            radius=1.0,
            num_docs=2,
            num_readers=8,
            readership_share=1.0,
        )
        docs = [
            PlacedDocument(doc_id="a", area=1, x=0.0, y=0.0, radius=0.9, readers=4),
            PlacedDocument(doc_id="b", area=1, x=0.1, y=0.0, radius=0.9, readers=4),
        ]
        with pytest.raises(AreaCapacityError):
            settle_documents([area], docs, max_iter=10, seed=0)

    def test_area_share_recomputable_from_documents(self):
        emb, assignment, labels, readers, meta = reference_layout_inputs(seed=0)
        areas = make_areas(emb, assignment, labels, readers)
        placed = place_documents(emb, assignment, areas, readers, meta)
        total = sum(d.readers for d in placed)
        by_area: dict[int, int] = {}
        for doc in placed:
            by_area[doc.area] = by_area.get(doc.area, 0) + doc.readers
        for area in areas:
            assert by_area[area.index] / total == pytest.approx(
                area.readership_share, abs=1e-9
            )


class TestExportMap:
    def _map(self) -> DomainMap:
        emb, assignment, labels, readers, meta = reference_layout_inputs(seed=0)
        areas = make_areas(emb, assignment, labels, readers)
        placed = place_documents(emb, assignment, areas, readers, meta)
        settled, _, _ = settle_documents(areas, placed, max_iter=1000, seed=0)
        provenance = Provenance(
            threshold=16,
            k=13,
            stress=emb.stress,
            r_squared=emb.r_squared,
            seed=0,
            timestamps={"created_at": None, "inputs_fingerprint": "fixture"},
        )
        return DomainMap(areas=areas, documents=settled, provenance=provenance)

    def test_round_trip_structural_equality(self, tmp_path):
        domain_map = self._map()
        path = tmp_path / "map.json"
        export_map(domain_map, str(path))
        loaded = load_map(str(path))
        assert loaded.provenance == domain_map.provenance
        assert len(loaded.areas) == len(domain_map.areas)
        assert len(loaded.documents) == len(domain_map.documents)
        for orig, back in zip(domain_map.areas, loaded.areas):
            assert orig == back
        for orig, back in zip(domain_map.documents, loaded.documents):
            assert orig == back

    def test_provenance_records_threshold_and_k(self, tmp_path):
        domain_map = self._map()
        path = tmp_path / "map.json"
        export_map(domain_map, str(path))
        loaded = load_map(str(path))
        assert loaded.provenance.threshold == 16
        assert loaded.provenance.k == 13

    def test_empty_area_rejected(self, tmp_path):
        domain_map = self._map()
        domain_map.areas.append(
            TopicArea(
                index=99,
                label="ghost",
                centroid=(0.0, 0.0),
                radius=1.0,
                num_docs=0,
                num_readers=0,
                readership_share=0.0,
            )
        )
        with pytest.raises(ValueError):
            export_map(domain_map, str(tmp_path / "map.json"))

    def test_no_documents_rejected(self, tmp_path):
        domain_map = self._map()
        domain_map.documents = []
        with pytest.raises(ValueError):
            export_map(domain_map, str(tmp_path / "map.json"))

    def test_payload_field_names(self, tmp_path):
        import json

        domain_map = self._map()
        path = tmp_path / "map.json"
        export_map(domain_map, str(path))
        payload = json.loads(path.read_text())
        assert set(payload) == {"areas", "documents", "provenance"}
        assert set(payload["areas"][0]) == {
            "index",
            "label",
            "centroid",
            "radius",
            "readers",
            "share",
        }
        assert set(payload["documents"][0]) == {
            "doc_id",
            "area",
            "x",
            "y",
            "radius",
            "title",
            "year",
            "journal",
            "pub_type",
            "readers",
        }
        assert set(payload["provenance"]) == {
            "threshold",
            "k",
            "stress",
            "r_squared",
            "seed",
            "timestamps",
        }
