from .clustering import ClusteringBackend
from .providers import (
    CompletionProvider,
    CompletionService,
    EmbeddingProvider,
    EmbeddingService,
)

__all__ = [
    "ClusteringBackend",
    "CompletionProvider",
    "CompletionService",
    "EmbeddingProvider",
    "EmbeddingService",
]
