import numpy as np
import pytest

from src.application.dtos.generation_dto import CandidateStatus
from src.domain.value_objects.embedding import Embedding
from tests.factories import StaticBackend, embeddings_from_gram, engine_for

pytestmark = pytest.mark.unit

IDS = ["a", "b", "c", "d", "e", "f"]
GROUPS = [["a", "b", "c"], ["d", "e", "f"]]


def block_gram(first: float, second: float, across: float = 0.1):
    gram = []
    for i in range(6):
        row = []
        for j in range(6):
            if i == j:
                row.append(1.0)
            elif i < 3 and j < 3:
                row.append(first)
            elif i >= 3 and j >= 3:
                row.append(second)
            else:
                row.append(across)
        gram.append(row)
    return gram


def test_single_artifact_is_singleton():
    backend = StaticBackend([["a"]])
    embeddings = {"a": Embedding.from_values([1.0])}
    clustering, records = engine_for(backend).run(["a"], embeddings)
    assert clustering.clusters == []
    assert clustering.singletons == ["a"]
    assert records == []
    assert backend.calls == []


def test_unanimous_partition():
    backend = StaticBackend(GROUPS)
    embeddings = embeddings_from_gram(IDS, block_gram(0.9, 0.9))
    clustering, records = engine_for(backend).run(IDS, embeddings, layer_index=0)
    assert sorted(sorted(c.member_ids) for c in clustering.clusters) == GROUPS
    assert clustering.singletons == []
    assert all(c.votes == 5 for c in clustering.clusters)
    assert all(c.cohesion == pytest.approx(0.9) for c in clustering.clusters)
    assert backend.calls == [
        "optics",
        "spectral",
        "agglomerative",
        "affinity",
        "kmeans",
    ]
    assert {r.status for r in records} == {CandidateStatus.ADMITTED}


def test_candidate_statuses():
    merged = [["a", "b", "c", "d", "e"], ["f"]]
    backend = StaticBackend(GROUPS, overrides={"optics": merged})
    embeddings = embeddings_from_gram(IDS, block_gram(0.9, 0.7))
    clustering, records = engine_for(backend).run(IDS, embeddings, layer_index=1)

    assert [sorted(c.member_ids) for c in clustering.clusters] == [["a", "b", "c"]]
    assert clustering.singletons == ["d", "e", "f"]
    assert clustering.layer_index == 1

    status = {tuple(sorted(r.members)): r for r in records}
    assert status[("a", "b", "c")].status == CandidateStatus.ADMITTED
    assert status[("a", "b", "c")].rank == 0
    assert status[("a", "b", "c")].votes == 4
    assert status[("d", "e", "f")].status == CandidateStatus.EXCLUDED_COHESION
    assert status[("a", "b", "c", "d", "e")].status == CandidateStatus.DISCARDED_LARGE
    assert status[("f",)].status == CandidateStatus.SET_ASIDE
    assert status[("a", "b", "c", "d", "e")].origin == ["optics"]


def test_technique_subset():
    backend = StaticBackend(GROUPS)
    embeddings = embeddings_from_gram(IDS, block_gram(0.9, 0.9))
    engine = engine_for(backend, technique_set=["kmeans"])
    clustering = engine.cluster_layer(IDS, embeddings)
    assert backend.calls == ["kmeans"]
    assert all(c.votes == 1 for c in clustering.clusters)


def test_selection_cut_comes_from_the_ranked_pool():
    # x-group has one weak member: cohesion 0.5 as ranked, 0.95 once cleansed.
    ids = ["x1", "x2", "x3", "o", "y1", "y2", "z1", "z2"]
    gram = np.eye(8)
    for i in range(3):
        for j in range(3):
            if i != j:
                gram[i, j] = 0.95
        gram[i, 3] = gram[3, i] = 0.05
    gram[4, 5] = gram[5, 4] = 0.6
    gram[6, 7] = gram[7, 6] = 0.9
    backend = StaticBackend([["x1", "x2", "x3", "o"], ["y1", "y2"], ["z1", "z2"]])
    embeddings = embeddings_from_gram(ids, gram.tolist())
    clustering, records = engine_for(backend).run(ids, embeddings)

    # 25th percentile of {0.5, 0.6, 0.9} is 0.55; after cleansing it would be 0.75
    assert sorted(sorted(c.member_ids) for c in clustering.clusters) == [
        ["x1", "x2", "x3"],
        ["y1", "y2"],
        ["z1", "z2"],
    ]
    assert clustering.singletons == ["o"]
    status = {tuple(sorted(r.members)): r for r in records}
    assert status[("o", "x1", "x2", "x3")].ejected == ["o"]
    assert status[("y1", "y2")].status == CandidateStatus.ADMITTED
