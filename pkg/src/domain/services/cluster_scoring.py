"""
Consensus cluster scoring

Candidate pooling, size filtering, cohesion, importance, ranking, cleansing,
selection and orphan placement. Everything here is pure; the clustering
techniques themselves live behind the ClusteringBackend interface.
"""
import logging
import math
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..entities.cluster import Cluster, Clustering
from ..exceptions import ArgumentError
from ..value_objects.embedding import Embedding
from ..value_objects.params import ClusterParams
from .similarity import SimilarityIndex

logger = logging.getLogger(__name__)

Partition = List[List[str]]
_EPS = 1e-12


def _pairwise_mean(unit: np.ndarray) -> float:
    n = unit.shape[0]
    if n < 2:
        raise ArgumentError("Cohesion needs at least 2 members")
    sims = np.clip(unit @ unit.T, -1.0, 1.0)
    upper = sims[np.triu_indices(n, k=1)]
    return float(np.clip(upper.mean(), -1.0, 1.0))


def cohesion(members: Sequence[Embedding]) -> float:
    """Mean cosine over unordered member pairs"""
    if len(members) < 2:
        raise ArgumentError("Cohesion needs at least 2 members")
    matrix = np.vstack([m.as_array() for m in members])
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    if np.any(norms == 0):
        raise ArgumentError("Cohesion is undefined for a zero vector")
    return _pairwise_mean(matrix / norms)


def cluster_cohesion(index: SimilarityIndex, member_ids: Sequence[str]) -> float:
    return _pairwise_mean(index.vectors(member_ids))


def importance_score(
    size: int, cohesion_value: float, votes: int, alpha: float
) -> float:
    """(alpha * ln(s) + h) * v"""
    return (alpha * math.log(size) + cohesion_value) * votes


def importance(cluster: Cluster, params: ClusterParams) -> float:
    if cluster.cohesion is None:
        raise ArgumentError("Cluster cohesion has not been computed")
    return importance_score(cluster.size, cluster.cohesion, cluster.votes, params.alpha)


def rescore(cluster: Cluster, index: SimilarityIndex, params: ClusterParams) -> Cluster:
    """Recompute cohesion and importance after a membership change"""
    if cluster.size < 2:
        return cluster.model_copy(update={"cohesion": None, "importance": None})
    h = cluster_cohesion(index, cluster.member_ids)
    return cluster.model_copy(
        update={
            "cohesion": h,
            "importance": importance_score(
                cluster.size, h, cluster.votes, params.alpha
            ),
        }
    )


def generate_candidates(partitions: Sequence[Tuple[str, Partition]]) -> List[Cluster]:
    """Pool every technique's groups; votes count identical member sets"""
    pool: Dict[frozenset, Cluster] = {}
    for technique, partition in partitions:
        for group in partition:
            if not group:
                continue
            key = frozenset(group)
            existing = pool.get(key)
            if existing is None:
                pool[key] = Cluster(
                    member_ids=tuple(group), votes=1, origin=frozenset({technique})
                )
            elif technique not in existing.origin:
                pool[key] = existing.model_copy(
                    update={
                        "votes": existing.votes + 1,
                        "origin": existing.origin | {technique},
                    }
                )
    return list(pool.values())


def filter_by_size(
    pool: Sequence[Cluster], params: ClusterParams
) -> Tuple[List[Cluster], List[str]]:
    """Drop large candidates and set singletons aside"""
    kept: List[Cluster] = []
    set_aside: List[str] = []
    for candidate in pool:
        if candidate.size >= params.large_cluster_min:
            continue
        if candidate.size == 1:
            if candidate.member_ids[0] not in set_aside:
                set_aside.append(candidate.member_ids[0])
            continue
        kept.append(candidate)
    return kept, set_aside


def score_clusters(
    pool: Sequence[Cluster], index: SimilarityIndex, params: ClusterParams
) -> List[Cluster]:
    return [rescore(candidate, index, params) for candidate in pool]


def rank_clusters(pool: Sequence[Cluster]) -> List[Cluster]:
    """Descending importance; ties by higher cohesion, then smallest first member id"""
    return sorted(
        pool,
        key=lambda c: (-(c.importance or 0.0), -(c.cohesion or 0.0), c.first_member()),
    )


def cleanse(
    cluster: Cluster, index: SimilarityIndex, params: ClusterParams
) -> Tuple[Cluster, List[str]]:
    """Eject members whose mean similarity falls outlier_sigma std below the group"""
    if cluster.size < 3:
        return cluster, []
    sims = index.matrix(cluster.member_ids, cluster.member_ids)
    n = cluster.size
    member_means = (sims.sum(axis=1) - np.diag(sims)) / (n - 1)
    spread = float(np.std(member_means))
    if spread == 0:
        return cluster, []
    threshold = float(np.mean(member_means)) - params.outlier_sigma * spread
    ejected = [
        m for m, mean in zip(cluster.member_ids, member_means) if mean < threshold
    ]
    if not ejected:
        return cluster, []
    remaining = tuple(m for m in cluster.member_ids if m not in ejected)
    logger.debug(f"Cleansing ejected {ejected} from cluster of {n}")
    shrunk = cluster.model_copy(update={"member_ids": remaining})
    return rescore(shrunk, index, params), ejected


def selection_threshold(
    ranked: Sequence[Cluster], params: ClusterParams
) -> Optional[float]:
    cohesions = [c.cohesion for c in ranked if c.cohesion is not None]
    if not cohesions:
        return None
    return float(np.percentile(cohesions, params.selection_cohesion_percentile))


def selection(
    ranked: Sequence[Cluster],
    index: SimilarityIndex,
    params: ClusterParams,
    threshold: Optional[float] = None,
) -> List[Tuple[int, Cluster]]:
    """Admitted clusters paired with their position in the ranking

    The cohesion cut defaults to the percentile over `ranked`; callers that
    cleanse first pass the percentile of the pool as it was ranked.
    """
    if threshold is None:
        threshold = selection_threshold(ranked, params)
    if threshold is None:
        return []
    inclusion: List[Tuple[int, Cluster]] = []
    present: Set[str] = set()
    for position, focus in enumerate(ranked):
        remaining = tuple(m for m in focus.member_ids if m not in present)
        if len(remaining) < 2:
            continue
        if len(remaining) != focus.size:
            focus = rescore(
                focus.model_copy(update={"member_ids": remaining}), index, params
            )
        if focus.cohesion is not None and focus.cohesion >= threshold - _EPS:
            inclusion.append((position, focus))
            present.update(remaining)
    return inclusion


def select_clusters(
    ranked: Sequence[Cluster], index: SimilarityIndex, params: ClusterParams
) -> List[Cluster]:
    """Walk the ranking; admit clusters still standing once present members go"""
    return [cluster for _, cluster in selection(ranked, index, params)]


def assign_orphans(
    inclusion: Sequence[Cluster],
    orphan_ids: Sequence[str],
    index: SimilarityIndex,
    params: ClusterParams,
    layer_index: int = 0,
) -> Clustering:
    """Place each orphan in its best qualifying cluster or keep it as a singleton"""
    clusters = list(inclusion)
    singletons: List[str] = []
    for orphan in orphan_ids:
        best: Optional[int] = None
        best_mean = -math.inf
        for position, cluster in enumerate(clusters):
            mean = index.mean_to(orphan, cluster.member_ids)
            h = cluster.cohesion if cluster.cohesion is not None else 1.0
            qualifies = abs(mean - h) <= params.orphan_tolerance + _EPS or mean > h
            if qualifies and mean > best_mean:
                best, best_mean = position, mean
        if best is None:
            singletons.append(orphan)
            continue
        joined = clusters[best].model_copy(
            update={"member_ids": (*clusters[best].member_ids, orphan)}
        )
        clusters[best] = rescore(joined, index, params)
    return Clustering(layer_index=layer_index, clusters=clusters, singletons=singletons)
