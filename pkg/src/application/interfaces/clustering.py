from abc import ABC, abstractmethod
from typing import List, Sequence

from ...domain.value_objects.embedding import Embedding
from ...domain.value_objects.params import ClusteringTechnique, ClusterParams


class ClusteringBackend(ABC):
    """Runs one clustering technique over a layer's embeddings"""

    @abstractmethod
    def run_technique(
        self,
        kind: ClusteringTechnique,
        ids: Sequence[str],
        embeddings: Sequence[Embedding],
        params: ClusterParams,
    ) -> List[List[str]]:
        """Partition ids; noise points come back as singleton groups"""
        pass
