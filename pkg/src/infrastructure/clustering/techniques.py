"""
scikit-learn clustering backend

All techniques work on cosine geometry: k-means on unit vectors, the rest
on precomputed cosine affinities or distances (1 - cosine).
"""
import logging
import warnings
from typing import Dict, List, Sequence

import numpy as np
from sklearn.cluster import (
    OPTICS,
    AffinityPropagation,
    AgglomerativeClustering,
    KMeans,
    SpectralClustering,
)
from sklearn.exceptions import ConvergenceWarning

from ...application.interfaces.clustering import ClusteringBackend
from ...domain.value_objects.embedding import Embedding
from ...domain.value_objects.params import ClusteringTechnique, ClusterParams

logger = logging.getLogger(__name__)

NOISE = -1


def unit_rows(embeddings: Sequence[Embedding]) -> np.ndarray:
    matrix = np.vstack([e.as_array() for e in embeddings])
    return matrix / np.linalg.norm(matrix, axis=1, keepdims=True)


def distinct_rows(unit: np.ndarray, decimals: int = 9) -> int:
    return int(np.unique(np.round(unit, decimals), axis=0).shape[0])


def labels_to_groups(ids: Sequence[str], labels: Sequence[int]) -> List[List[str]]:
    """Groups in order of first appearance; noise points become singletons"""
    groups: Dict[int, List[str]] = {}
    ordered: List[List[str]] = []
    for artifact_id, label in zip(ids, labels):
        label = int(label)
        if label == NOISE:
            ordered.append([artifact_id])
            continue
        if label not in groups:
            groups[label] = []
            ordered.append(groups[label])
        groups[label].append(artifact_id)
    return ordered


class SklearnClusteringBackend(ClusteringBackend):
    """Five seeded techniques over one layer"""

    def run_technique(
        self,
        kind: ClusteringTechnique,
        ids: Sequence[str],
        embeddings: Sequence[Embedding],
        params: ClusterParams,
    ) -> List[List[str]]:
        ids = list(ids)
        if len(ids) < 2:
            return [[artifact_id] for artifact_id in ids]

        unit = unit_rows(embeddings)
        distinct = distinct_rows(unit)
        if distinct == 1:
            return [ids]

        similarity = np.clip(unit @ unit.T, -1.0, 1.0)
        k = min(params.cluster_count(len(ids)), distinct)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", ConvergenceWarning)
            warnings.simplefilter("ignore", UserWarning)
            try:
                labels = self._labels(kind, unit, similarity, k, params)
            except ValueError as e:
                logger.warning(
                    f"{kind.value} failed on {len(ids)} artifacts ({e}); "
                    "treating all as singletons"
                )
                return [[artifact_id] for artifact_id in ids]
        for warning in caught:
            if issubclass(warning.category, ConvergenceWarning):
                logger.debug(f"{kind.value}: {warning.message}")
        return labels_to_groups(ids, labels)

    def _labels(
        self,
        kind: ClusteringTechnique,
        unit: np.ndarray,
        similarity: np.ndarray,
        k: int,
        params: ClusterParams,
    ) -> np.ndarray:
        distance = np.clip(1.0 - similarity, 0.0, 2.0)
        np.fill_diagonal(distance, 0.0)

        if kind == ClusteringTechnique.KMEANS:
            model = KMeans(
                n_clusters=k, random_state=params.seed, n_init=params.kmeans_n_init
            )
            return model.fit_predict(unit)

        if kind == ClusteringTechnique.SPECTRAL:
            affinity = np.clip(similarity, 0.0, 1.0)
            model = SpectralClustering(
                n_clusters=k,
                affinity="precomputed",
                random_state=params.seed,
                assign_labels="kmeans",
            )
            return model.fit_predict(affinity)

        if kind == ClusteringTechnique.AGGLOMERATIVE:
            model = AgglomerativeClustering(
                n_clusters=k, metric="precomputed", linkage="average"
            )
            return model.fit_predict(distance)

        if kind == ClusteringTechnique.AFFINITY:
            model = AffinityPropagation(
                affinity="precomputed",
                damping=params.affinity_damping,
                max_iter=params.affinity_max_iter,
                preference=float(np.median(similarity)),
                random_state=params.seed,
            )
            return model.fit_predict(similarity)

        if kind == ClusteringTechnique.OPTICS:
            model = OPTICS(
                min_samples=min(params.optics_min_samples, unit.shape[0]),
                metric="precomputed",
                cluster_method="xi",
                xi=params.optics_xi,
            )
            return model.fit_predict(distance)

        raise ValueError(f"Unsupported clustering technique {kind}")
