import math

import numpy as np
import pytest

from coreadmap.errors import DegenerateEmbeddingError
from coreadmap.ordination import Embedding, isotonic_fit, nmds, shepard_data


def distances_of(points: np.ndarray) -> np.ndarray:
    return np.sqrt(((points[:, None, :] - points[None, :, :]) ** 2).sum(-1))


def planar_fixture(n=20, seed=7):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0, 10, size=(n, 2))
    ids = [f"p{i:02d}" for i in range(n)]
    return distances_of(pts), ids


class TestIsotonicFit:
    def test_monotone_input_unchanged(self):
        values = np.array([1.0, 2.0, 2.0, 5.0])
        assert np.allclose(isotonic_fit(values), values)

    def test_violation_pooled_to_mean(self):
        values = np.array([3.0, 1.0])
        assert np.allclose(isotonic_fit(values), [2.0, 2.0])

    def test_output_non_decreasing(self):
        rng = np.random.default_rng(0)
        values = rng.uniform(size=50)
        fitted = isotonic_fit(values)
        assert (np.diff(fitted) >= -1e-12).all()

    def test_least_squares_property_on_blocks(self):
        # pooled blocks take block means: [5, 1, 2] -> [8/3, 8/3, 8/3]
        assert np.allclose(isotonic_fit(np.array([5.0, 1.0, 2.0])), [8 / 3] * 3)


class TestNmds:
    def test_equilateral_triangle_with_centroid_embeds_exactly(self):
        pts = np.array(
            [[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2], [0.5, math.sqrt(3) / 6]]
        )
        d = distances_of(pts)
        embedding = nmds(d, ["a", "b", "c", "d"], restarts=10, seed=0)
        assert embedding.stress < 1e-3

    def test_recovers_planar_configuration(self):
        d, ids = planar_fixture()
        embedding = nmds(d, ids, restarts=10, seed=1)
        assert embedding.stress <= 0.05
        assert embedding.r_squared > 0.95

    def test_stress_never_increases_within_restart(self):
        d, ids = planar_fixture(seed=9)
        embedding = nmds(d, ids, restarts=5, seed=2)
        trace = embedding.stress_history
        assert len(trace) >= 2
        assert all(b <= a + 1e-12 for a, b in zip(trace, trace[1:]))

    def test_permutation_invariance_after_alignment(self):
        d, ids = planar_fixture(seed=3)
        base = nmds(d, ids, restarts=5, seed=4)
        perm = np.random.default_rng(1).permutation(len(ids))
        permuted = nmds(
            d[np.ix_(perm, perm)], [ids[i] for i in perm], restarts=5, seed=4
        )
        for doc in ids:
            assert base.coords[doc] == pytest.approx(permuted.coords[doc], abs=1e-9)

    def test_alignment_centers_and_orders_axes(self):
        d, ids = planar_fixture(seed=5)
        embedding = nmds(d, ids, restarts=5, seed=6)
        coords = np.array([embedding.coords[i] for i in ids])
        assert coords.mean(axis=0) == pytest.approx([0.0, 0.0], abs=1e-9)
        assert coords[:, 0].var() >= coords[:, 1].var() - 1e-12
        assert ((coords[:, 0] ** 3).sum()) >= -1e-9
        assert np.isfinite(coords).all()

    def test_determinism(self):
        d, ids = planar_fixture(seed=11)
        first = nmds(d, ids, restarts=3, seed=9)
        second = nmds(d, ids, restarts=3, seed=9)
        assert first.coords == second.coords
        assert first.stress == second.stress

    def test_too_few_documents_rejected(self):
        d = np.zeros((3, 3))
        with pytest.raises(ValueError):
            nmds(d, ["a", "b", "c"])

    def test_missing_distances_rejected(self):
        d = np.zeros((4, 4))
        d[0, 1] = d[1, 0] = np.nan
        with pytest.raises(ValueError):
            nmds(d, list("abcd"))

    def test_all_zero_distances_fit_trivially(self):
        # no rank constraints to violate: any configuration is a perfect fit
        d = np.zeros((5, 5))
        embedding = nmds(d, list("abcde"), restarts=2)
        assert embedding.stress == 0.0

    def test_collapsed_configuration_raises(self, monkeypatch):
        import coreadmap.ordination as mod

        def collapsed(distances, dims, max_iter, tol, rng):
            return np.zeros((len(distances), dims)), math.inf, [math.inf]

        monkeypatch.setattr(mod, "_run_restart", collapsed)
        d, ids = planar_fixture(seed=1)
        with pytest.raises(DegenerateEmbeddingError):
            mod.nmds(d, ids, restarts=3)


class TestShepardData:
    def test_perfect_embedding_has_disparity_equal_distance(self):
        pts = np.array(
            [[0.0, 0.0], [2.0, 0.0], [1.0, math.sqrt(3)], [1.0, math.sqrt(3) / 3]]
        )
        d = distances_of(pts)
        embedding = nmds(d, list("abcd"), restarts=10, seed=0)
        records = shepard_data(d, list("abcd"), embedding)
        for _delta, config_dist, disparity in records:
            assert config_dist == pytest.approx(disparity, abs=1e-4)

    def test_disparities_non_decreasing(self):
        d, ids = planar_fixture(seed=13)
        embedding = nmds(d, ids, restarts=3, seed=0)
        records = shepard_data(d, ids, embedding)
        deltas = [r[0] for r in records]
        disparities = [r[2] for r in records]
        assert deltas == sorted(deltas)
        assert all(b >= a - 1e-12 for a, b in zip(disparities, disparities[1:]))

    def test_r_squared_recomputation_matches(self):
        d, ids = planar_fixture(seed=15)
        embedding = nmds(d, ids, restarts=5, seed=3)
        records = shepard_data(d, ids, embedding)
        deltas = np.array([r[0] for r in records])
        config = np.array([r[1] for r in records])
        r = np.corrcoef(deltas, config)[0, 1]
        assert r * r == pytest.approx(embedding.r_squared, abs=1e-9)

    def test_record_count_is_pair_count(self):
        d, ids = planar_fixture(seed=17)
        embedding = nmds(d, ids, restarts=2, seed=5)
        records = shepard_data(d, ids, embedding)
        n = len(ids)
        assert len(records) == n * (n - 1) // 2
