"""
Cluster engine service

Runs the consensus clustering sequence over one layer: technique runs,
candidate pooling, size filter, scoring, ranking, cleansing, selection
and orphan placement.
"""

import logging
from typing import Dict, List, Mapping, Sequence, Set, Tuple

from ...domain.entities.cluster import Cluster, Clustering
from ...domain.services.cluster_scoring import (
    assign_orphans,
    cleanse,
    filter_by_size,
    generate_candidates,
    rank_clusters,
    score_clusters,
    selection,
    selection_threshold,
)
from ...domain.services.similarity import SimilarityIndex
from ...domain.value_objects.embedding import Embedding
from ...domain.value_objects.params import ClusterParams
from ..dtos.generation_dto import CandidateRecord, CandidateStatus
from ..interfaces.clustering import ClusteringBackend

logger = logging.getLogger(__name__)


class ClusterEngine:
    """Consensus clustering over a clustering backend"""

    def __init__(self, backend: ClusteringBackend, params: ClusterParams):
        self._backend = backend
        self.params = params

    def run_techniques(
        self, ids: Sequence[str], embeddings: Mapping[str, Embedding]
    ) -> List[Tuple[str, List[List[str]]]]:
        """Partition the layer with every configured technique, in order"""
        vectors = [embeddings[i] for i in ids]
        partitions = []
        for technique in self.params.technique_set:
            partition = self._backend.run_technique(
                technique, ids, vectors, self.params
            )
            logger.debug(
                f"{technique.value}: {len(partition)} groups over {len(ids)} artifacts"
            )
            partitions.append((technique.value, partition))
        return partitions

    def run(
        self,
        ids: Sequence[str],
        embeddings: Mapping[str, Embedding],
        layer_index: int = 0,
    ) -> Tuple[Clustering, List[CandidateRecord]]:
        """Cluster one layer; returns the clustering and the candidate-pool dump"""
        ids = list(ids)
        if len(ids) < 2:
            return Clustering(layer_index=layer_index, clusters=[], singletons=ids), []

        index = SimilarityIndex({i: embeddings[i] for i in ids})
        params = self.params

        pool = generate_candidates(self.run_techniques(ids, embeddings))
        kept, set_aside = filter_by_size(pool, params)
        ranked = rank_clusters(score_clusters(kept, index, params))

        cleansed: List[Cluster] = []
        ejected_by_rank: List[List[str]] = []
        for candidate in ranked:
            cluster, ejected = cleanse(candidate, index, params)
            cleansed.append(cluster)
            ejected_by_rank.append(ejected)

        threshold = selection_threshold(ranked, params)
        admitted = selection(cleansed, index, params, threshold=threshold)
        present: Set[str] = {m for _, cluster in admitted for m in cluster.member_ids}
        orphans = [i for i in ids if i not in present]
        clustering = assign_orphans(
            [c for _, c in admitted], orphans, index, params, layer_index
        )

        records = self._records(
            pool, ranked, cleansed, ejected_by_rank, admitted, clustering
        )
        logger.info(
            f"Layer {layer_index}: {len(pool)} candidates, "
            f"{len(clustering.clusters)} clusters, "
            f"{len(clustering.singletons)} singletons "
            f"({len(set_aside)} set aside, {len(orphans)} orphans)"
        )
        return clustering, records

    def cluster_layer(
        self,
        ids: Sequence[str],
        embeddings: Mapping[str, Embedding],
        layer_index: int = 0,
    ) -> Clustering:
        clustering, _ = self.run(ids, embeddings, layer_index)
        return clustering

    def _records(
        self,
        pool: Sequence[Cluster],
        ranked: Sequence[Cluster],
        cleansed: Sequence[Cluster],
        ejected_by_rank: Sequence[List[str]],
        admitted: Sequence[Tuple[int, Cluster]],
        clustering: Clustering,
    ) -> List[CandidateRecord]:
        params = self.params
        rank_of: Dict[frozenset, int] = {
            c.key: position for position, c in enumerate(ranked)
        }
        final_of: Dict[int, Cluster] = {
            position: final
            for (position, _), final in zip(admitted, clustering.clusters)
        }
        selected_of: Dict[int, Cluster] = dict(admitted)
        admitted_positions = set(selected_of)
        present_before: Dict[int, Set[str]] = {}
        present: Set[str] = set()
        for position in range(len(cleansed)):
            present_before[position] = set(present)
            if position in admitted_positions:
                present.update(selected_of[position].member_ids)

        records: List[CandidateRecord] = []
        for candidate in pool:
            base = {
                "members": list(candidate.member_ids),
                "size": candidate.size,
                "votes": candidate.votes,
                "origin": sorted(candidate.origin),
            }
            if candidate.size >= params.large_cluster_min:
                records.append(
                    CandidateRecord(**base, status=CandidateStatus.DISCARDED_LARGE)
                )
                continue
            if candidate.size == 1:
                records.append(
                    CandidateRecord(**base, status=CandidateStatus.SET_ASIDE)
                )
                continue
            position = rank_of[candidate.key]
            scored = cleansed[position]
            if position in admitted_positions:
                final = final_of[position]
                status = CandidateStatus.ADMITTED
                final_members = list(final.member_ids)
                oversized = final.size >= params.large_cluster_min
            else:
                remaining = [
                    m for m in scored.member_ids if m not in present_before[position]
                ]
                status = (
                    CandidateStatus.EXCLUDED_SIZE
                    if len(remaining) < 2
                    else CandidateStatus.EXCLUDED_COHESION
                )
                final_members, oversized = [], False
            records.append(
                CandidateRecord(
                    **base,
                    cohesion=ranked[position].cohesion,
                    importance=ranked[position].importance,
                    rank=position,
                    ejected=list(ejected_by_rank[position]),
                    status=status,
                    final_members=final_members,
                    oversized_after_orphans=oversized,
                )
            )
        return sorted(
            records,
            key=lambda r: (
                r.rank if r.rank is not None else len(pool),
                sorted(r.members),
            ),
        )
