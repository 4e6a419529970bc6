from typing import Dict, Mapping, Sequence

import numpy as np

from ..exceptions import ArgumentError
from ..value_objects.embedding import Embedding


class SimilarityIndex:
    """Cosine lookups over a fixed set of embedded artifacts"""

    def __init__(self, embeddings: Mapping[str, Embedding]):
        self._ids = list(embeddings.keys())
        self._position: Dict[str, int] = {
            artifact_id: i for i, artifact_id in enumerate(self._ids)
        }
        if self._ids:
            matrix = np.vstack([embeddings[i].as_array() for i in self._ids])
            norms = np.linalg.norm(matrix, axis=1, keepdims=True)
            if np.any(norms == 0):
                raise ArgumentError("Cannot index a zero embedding")
            self._unit = matrix / norms
        else:
            self._unit = np.zeros((0, 0))

    @property
    def ids(self) -> Sequence[str]:
        return tuple(self._ids)

    def __contains__(self, artifact_id: object) -> bool:
        return artifact_id in self._position

    def vectors(self, ids: Sequence[str]) -> np.ndarray:
        """Unit vectors for ids, in the given order"""
        try:
            rows = [self._position[i] for i in ids]
        except KeyError as e:
            raise ArgumentError(f"No embedding for artifact {e.args[0]}") from e
        return self._unit[rows]

    def matrix(self, rows: Sequence[str], cols: Sequence[str]) -> np.ndarray:
        if not rows or not cols:
            return np.zeros((len(rows), len(cols)))
        return np.clip(self.vectors(rows) @ self.vectors(cols).T, -1.0, 1.0)

    def sim(self, a: str, b: str) -> float:
        return float(self.matrix([a], [b])[0, 0])

    def mean_to(self, artifact_id: str, others: Sequence[str]) -> float:
        """Mean cosine from one artifact to a group"""
        if not others:
            raise ArgumentError("Mean similarity to an empty group is undefined")
        return float(self.matrix([artifact_id], others).mean())
