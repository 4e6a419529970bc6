import math
from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..exceptions import ArgumentError


class Embedding(BaseModel):
    """Value object for a fixed-dimension text embedding"""
    model_config = ConfigDict(frozen=True)

    values: Tuple[float, ...] = Field(..., min_length=1)
    dim: int = Field(..., gt=0)

    @model_validator(mode="after")
    def check_values(self) -> "Embedding":
        if len(self.values) != self.dim:
            raise ValueError(
                f"Embedding has {len(self.values)} values, expected dim {self.dim}"
            )
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("Embedding contains non-finite values")
        return self

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "Embedding":
        """Create embedding from a raw vector"""
        floats = tuple(float(v) for v in values)
        return cls(values=floats, dim=len(floats))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def is_zero(self) -> bool:
        return not any(self.values)


def cosine_similarity(a: Embedding, b: Embedding) -> float:
    """Cosine similarity of two embeddings, in [-1, 1]"""
    if a.dim != b.dim:
        raise ArgumentError(f"Dimension mismatch: {a.dim} != {b.dim}")
    va = a.as_array()
    vb = b.as_array()
    na = np.linalg.norm(va)
    nb = np.linalg.norm(vb)
    if na == 0 or nb == 0:
        raise ArgumentError("Cosine similarity is undefined for a zero vector")
    value = float(np.dot(va, vb) / (na * nb))
    return max(-1.0, min(1.0, value))


def similarity_matrix(
    rows: Sequence[Embedding], cols: Sequence[Embedding]
) -> np.ndarray:
    """Dense cosine matrix, rows x cols"""
    if not rows or not cols:
        return np.zeros((len(rows), len(cols)))
    left = _unit_rows(rows)
    right = _unit_rows(cols)
    if left.shape[1] != right.shape[1]:
        raise ArgumentError(f"Dimension mismatch: {left.shape[1]} != {right.shape[1]}")
    return np.clip(left @ right.T, -1.0, 1.0)


def _unit_rows(embeddings: Sequence[Embedding]) -> np.ndarray:
    matrix = np.vstack([e.as_array() for e in embeddings])
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    if np.any(norms == 0):
        raise ArgumentError("Cosine similarity is undefined for a zero vector")
    return matrix / norms
