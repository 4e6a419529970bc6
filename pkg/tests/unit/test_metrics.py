import numpy as np
import pytest

from src.domain.entities import ArtifactTree, Layer, TraceLink
from src.domain.services.metrics import (
    average_precision,
    concept_coverage,
    count_orphans,
    mean_average_precision,
    precision_recall,
    rank_by_parent,
)
from src.domain.value_objects.evaluation import ConceptAnnotation, ConceptSet
from tests.factories import two_layer_tree

pytestmark = pytest.mark.unit

TRUTH = {("p1", "c1"), ("p1", "c2"), ("p2", "c3"), ("p2", "c4")}


class TestPrecisionRecall:
    def test_identity(self):
        assert precision_recall(TRUTH, TRUTH) == (1.0, 1.0)

    def test_one_wrong_link(self):
        precision, recall = precision_recall(TRUTH | {("p1", "c9")}, TRUTH)
        assert precision == pytest.approx(0.8)
        assert recall == pytest.approx(1.0)

    def test_disjoint(self):
        assert precision_recall({("x", "y")}, TRUTH) == (0.0, 0.0)

    def test_empty_sides_are_absent(self):
        assert precision_recall([], TRUTH) == (None, 0.0)
        assert precision_recall(TRUTH, []) == (0.0, None)

    def test_adding_links_moves_metrics_the_right_way(self):
        rng = np.random.default_rng(2)
        universe = [(f"p{i}", f"c{j}") for i in range(4) for j in range(6)]
        for _ in range(100):
            truth = {p for p in universe if rng.random() < 0.3} or {universe[0]}
            predicted = {p for p in universe if rng.random() < 0.3} or {universe[1]}
            precision, recall = precision_recall(predicted, truth)
            for pair in universe:
                if pair in predicted:
                    continue
                new_precision, new_recall = precision_recall(predicted | {pair}, truth)
                if pair in truth:
                    assert new_recall >= recall
                else:
                    assert new_precision <= precision


class TestMeanAveragePrecision:
    def test_hit_miss_hit(self):
        score = average_precision(["c1", "c2", "c3"], {"c1", "c3"})
        assert score == pytest.approx(0.8333, abs=1e-4)

    def test_perfect_ranking(self):
        ranked = {"p1": ["c1", "c2", "c9"], "p2": ["c3", "c4"]}
        assert mean_average_precision(ranked, TRUTH) == pytest.approx(1.0)

    def test_parent_without_predictions_counts_zero(self):
        assert mean_average_precision({"p1": ["c1", "c2"]}, TRUTH) == pytest.approx(0.5)

    def test_no_true_links_is_absent(self):
        assert mean_average_precision({"p1": ["c1"]}, []) is None

    def test_rank_by_parent_orders_by_score_then_child(self):
        links = [
            TraceLink.create("p", "b", 0.5),
            TraceLink.create("p", "a", 0.5),
            TraceLink.create("p", "c", 0.9),
        ]
        assert rank_by_parent(links) == {"p": ["c", "a", "b"]}

    def test_matches_brute_force(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            parents = [f"p{i}" for i in range(int(rng.integers(1, 21)))]
            children = [f"c{j}" for j in range(int(rng.integers(1, 21)))]
            links = [
                TraceLink.create(p, c, float(rng.random()))
                for p in parents for c in children if rng.random() < 0.4
            ]
            truth = {(p, c) for p in parents for c in children if rng.random() < 0.2}
            if not truth:
                continue
            expected = []
            for parent in sorted({p for p, _ in truth}):
                ordered = sorted(
                    (link for link in links if link.parent_id == parent),
                    key=lambda link: (-link.score, link.child_id),
                )
                hits, total = 0, 0.0
                for rank, link in enumerate(ordered, start=1):
                    if (parent, link.child_id) in truth:
                        hits += 1
                        total += hits / rank
                expected.append(total / hits if hits else 0.0)
            value = mean_average_precision(rank_by_parent(links), truth)
            assert value == pytest.approx(sum(expected) / len(expected), abs=1e-9)
            assert 0.0 <= value <= 1.0


class TestCountOrphans:
    def test_fully_linked_layer(self):
        assert count_orphans(two_layer_tree(), 0) == 0

    def test_unlinked_children(self):
        tree = two_layer_tree()
        tree = tree.model_copy(update={"links": tree.links[:1]})
        assert count_orphans(tree, 0) == 2

    def test_missing_or_empty_layer(self):
        layer = Layer(index=0, artifact_type="code summary")
        tree = ArtifactTree(project_name="empty", layers=[layer])
        assert count_orphans(tree, 0) == 0
        assert count_orphans(tree, 5) == 0


class TestConceptCoverage:
    def test_seven_of_eight(self):
        annotations = [
            ConceptAnnotation(concept=f"k{i}", present_in_ids=frozenset({f"a{i}"}))
            for i in range(7)
        ]
        annotations.append(ConceptAnnotation(concept="k7"))
        coverage, covered_by = concept_coverage(annotations, 10)
        assert coverage == pytest.approx(0.875)
        assert covered_by == pytest.approx(0.7)

    def test_nothing_covered(self):
        annotations = [ConceptAnnotation(concept="a"), ConceptAnnotation(concept="b")]
        assert concept_coverage(annotations, 4) == (0.0, 0.0)

    def test_every_artifact_covers_something(self):
        covered = frozenset({"x", "y"})
        annotations = [ConceptAnnotation(concept="a", present_in_ids=covered)]
        assert concept_coverage(annotations, 2) == (1.0, 1.0)

    def test_no_concepts(self):
        assert concept_coverage([], 3) == (None, None)

    def test_concept_labels_unique(self):
        with pytest.raises(ValueError):
            ConceptSet(annotations=[ConceptAnnotation(concept="a")] * 2)
