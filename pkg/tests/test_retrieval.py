import numpy as np
import pytest

from seistex.retrieval import (
    RankedList,
    average_precision,
    bench_pair_time,
    compute_metrics,
    descriptor_similarity_matrix,
    precision_at_n,
    rankings_from_similarity,
    ranking_auc,
    retrieval_accuracy,
    run_retrieval,
)
from seistex.imagecore import DatasetManifest, load_manifest
from seistex.synthgen import generate_dataset


def make_ranking(relevant, similarities=None):
    relevant = np.asarray(relevant, dtype=bool)
    n = len(relevant)
    if similarities is None:
        similarities = np.linspace(1.0, 0.1, n)
    return RankedList(
        query_id=0,
        item_ids=np.arange(1, n + 1),
        similarities=np.asarray(similarities, dtype=float),
        relevant=relevant,
    )


# -- brute-force oracles -----------------------------------------------------

def brute_precision_at_n(rel, n):
    return sum(rel[:n]) / n


def brute_average_precision(rel):
    precisions = []
    hits = 0
    for i, r in enumerate(rel, start=1):
        if r:
            hits += 1
            precisions.append(hits / i)
    return sum(precisions) / len(precisions)


def brute_auc(rel, sims):
    num, den = 0.0, 0
    for i in range(len(rel)):
        for j in range(len(rel)):
            if rel[i] and not rel[j]:
                den += 1
                if sims[i] > sims[j]:
                    num += 1
                elif sims[i] == sims[j]:
                    num += 0.5
    return num / den


class TestMetricOracles:
    def test_precision_examples(self):
        r = make_ranking([1, 0, 1, 0])
        assert precision_at_n(r, 4) == 0.5
        assert precision_at_n(make_ranking([0, 1]), 1) == 0.0
        assert precision_at_n(make_ranking([1] * 20 + [0] * 5), 20) == 1.0

    def test_precision_out_of_range(self):
        with pytest.raises(ValueError):
            precision_at_n(make_ranking([1, 0]), 3)

    def test_average_precision_examples(self):
        assert average_precision(make_ranking([1, 1, 0, 0])) == 1.0
        assert average_precision(make_ranking([1, 0, 1, 0])) == pytest.approx(5 / 6)
        assert average_precision(make_ranking([0, 1, 0])) == 0.5

    def test_average_precision_no_relevant(self):
        with pytest.raises(ValueError):
            average_precision(make_ranking([0, 0, 0]))

    def test_auc_extremes(self):
        assert ranking_auc(make_ranking([1, 1, 0, 0])) == 1.0
        assert ranking_auc(make_ranking([0, 0, 1, 1])) == 0.0
        assert ranking_auc(make_ranking([1, 0, 1, 0], [0.5] * 4)) == 0.5

    def test_random_rankings_match_brute_force(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            n = int(rng.integers(4, 21))
            rel = rng.random(n) < 0.4
            if not rel.any() or rel.all():
                continue
            sims = np.round(rng.random(n), 2)  # coarse grid to exercise ties
            order = np.argsort(-sims, kind="stable")
            r = make_ranking(rel[order], sims[order])
            assert precision_at_n(r, n // 2 + 1) == pytest.approx(
                brute_precision_at_n(list(rel[order]), n // 2 + 1), abs=1e-12
            )
            assert average_precision(r) == pytest.approx(
                brute_average_precision(list(rel[order])), abs=1e-12
            )
            assert ranking_auc(r) == pytest.approx(
                brute_auc(list(rel[order]), list(sims[order])), abs=1e-12
            )

    def test_metrics_invariant_under_monotone_rescoring(self):
        rng = np.random.default_rng(1)
        rel = rng.random(15) < 0.5
        rel[0], rel[1] = True, False
        sims = rng.random(15)
        r1 = make_ranking(rel, sims)
        r2 = make_ranking(rel, sims**2)
        assert ranking_auc(r1) == pytest.approx(ranking_auc(r2), abs=1e-12)
        assert average_precision(r1) == average_precision(r2)


class TestRetrievalAccuracy:
    def test_perfect(self):
        man = DatasetManifest(tuple((f"{i}.png", "a" if i < 3 else "b") for i in range(6)))
        rankings = []
        for q in range(6):
            rel = [True, True] + [False] * 3
            rankings.append(make_ranking(rel))
        assert retrieval_accuracy(rankings, man) == 1.0

    def test_worst_case_two_classes_of_two(self):
        man = DatasetManifest(tuple((f"{i}.png", "a" if i < 2 else "b") for i in range(4)))
        rankings = [make_ranking([False, False, True]) for _ in range(4)]
        assert retrieval_accuracy(rankings, man) == 0.0


class TestRankings:
    def test_tie_break_by_id(self):
        sim = np.ones((4, 4))
        labels = ["a", "a", "b", "b"]
        rankings = rankings_from_similarity(sim, labels)
        np.testing.assert_array_equal(rankings[0].item_ids, [1, 2, 3])
        np.testing.assert_array_equal(rankings[2].item_ids, [0, 1, 3])

    def test_query_excluded_and_length(self):
        rng = np.random.default_rng(2)
        sim = rng.random((7, 7))
        sim = (sim + sim.T) / 2
        rankings = rankings_from_similarity(sim, ["a"] * 4 + ["b"] * 3)
        for q, r in enumerate(rankings):
            assert len(r) == 6
            assert q not in r.item_ids
            assert sorted(r.item_ids) == [i for i in range(7) if i != q]

    def test_descending_similarity(self):
        rng = np.random.default_rng(3)
        sim = rng.random((5, 5))
        rankings = rankings_from_similarity(sim, ["a", "a", "b", "b", "b"])
        for r in rankings:
            assert np.all(np.diff(r.similarities) <= 0)

    def test_transpose_gives_identical_rankings_for_symmetric_sim(self):
        rng = np.random.default_rng(4)
        sim = rng.random((6, 6))
        sim = (sim + sim.T) / 2
        labels = ["a", "b", "a", "b", "a", "b"]
        r1 = rankings_from_similarity(sim, labels)
        r2 = rankings_from_similarity(sim.T.copy(), labels)
        for a, b in zip(r1, r2):
            np.testing.assert_array_equal(a.item_ids, b.item_ids)


@pytest.fixture(scope="module")
def micro_corpus(tmp_path_factory):
    root = tmp_path_factory.mktemp("micro")
    manifest = generate_dataset(root, per_class=3, height=64, width=64, seed=11)
    return load_manifest(manifest)


class TestRunRetrieval:
    def test_separable_micro_corpus(self, micro_corpus):
        rankings = run_retrieval(micro_corpus, "clbp")
        assert len(rankings) == 12
        for r in rankings:
            assert len(r) == 11
        # intra-class similarity dominates: rank-1 neighbor is a classmate
        hits = sum(r.relevant[0] for r in rankings)
        assert hits >= 10

    def test_identical_descriptors_fall_back_to_id_order(self):
        from seistex.descriptor import DescriptorSet, Histogram

        h = Histogram(np.full(8, 0.125), -1, 1)
        sets = [DescriptorSet("sp", ["h0"], [h]) for _ in range(4)]
        sim = descriptor_similarity_matrix(sets)
        rankings = rankings_from_similarity(sim, ["a", "a", "b", "b"])
        np.testing.assert_array_equal(rankings[3].item_ids, [0, 1, 2])

    def test_rejects_degenerate_manifest(self):
        man = DatasetManifest(tuple())
        with pytest.raises(ValueError):
            run_retrieval(man, "clbp")

    def test_rejects_single_class(self, tmp_path):
        man = DatasetManifest((("a.png", "x"), ("b.png", "x")))
        with pytest.raises(ValueError):
            run_retrieval(man, "clbp")

    def test_kld_distance_runs(self, micro_corpus):
        rankings = run_retrieval(micro_corpus, "lri", distance="kld")
        report = compute_metrics(rankings, micro_corpus)
        assert 0.0 <= report["map"] <= 1.0


class TestSimilarityMatrix:
    def test_matches_pairwise_aggregate(self, micro_corpus):
        from seistex.descriptor import aggregate_distance, to_similarity
        from seistex.pipeline import extract_corpus

        descs, _ = extract_corpus(micro_corpus.paths()[:5], "lri")
        sim = descriptor_similarity_matrix(descs, "scd")
        for i in range(5):
            for j in range(5):
                expected = to_similarity(aggregate_distance(descs[i], descs[j]))
                assert sim[i, j] == pytest.approx(expected, abs=1e-10)

    def test_kld_matches_pairwise(self, micro_corpus):
        from seistex.descriptor import aggregate_distance, to_similarity
        from seistex.pipeline import extract_corpus

        descs, _ = extract_corpus(micro_corpus.paths()[:4], "clbp")
        sim = descriptor_similarity_matrix(descs, "kld")
        for i in range(4):
            for j in range(4):
                expected = to_similarity(aggregate_distance(descs[i], descs[j], "kld"))
                assert sim[i, j] == pytest.approx(expected, abs=1e-9)


class TestBenchPairTime:
    def test_positive_and_finite(self):
        rng = np.random.default_rng(5)
        a, b = rng.standard_normal((64, 64)), rng.standard_normal((64, 64))
        t = bench_pair_time("clbp", a, b, reps=3)
        assert 0.0 < t < 60.0

    def test_reps_validation(self):
        a = np.zeros((64, 64))
        with pytest.raises(ValueError):
            bench_pair_time("clbp", a, a, reps=2)
