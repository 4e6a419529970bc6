"""
Provider interfaces

Completion and embedding backends implement these; the gateway wraps them
with caching, retries and the parallelism bound.
"""
from abc import ABC, abstractmethod
from typing import List, Sequence

from ...domain.value_objects.completion import CompletionRequest
from ...domain.value_objects.embedding import Embedding


class CompletionProvider(ABC):
    """Text-completion backend"""

    @property
    @abstractmethod
    def identity(self) -> str:
        """Stable provider + model identifier recorded in provenance"""
        pass

    @abstractmethod
    async def complete(self, request: CompletionRequest) -> str:
        """Return the raw completion text"""
        pass

    async def aclose(self) -> None:
        return None


class EmbeddingProvider(ABC):
    """Sentence-embedding backend"""

    @property
    @abstractmethod
    def identity(self) -> str:
        pass

    @abstractmethod
    async def embed(self, texts: Sequence[str]) -> List[Embedding]:
        """One embedding per text, order preserved"""
        pass

    async def aclose(self) -> None:
        return None


class CompletionService(ABC):
    """What use cases see: cached, retried completion"""

    @property
    @abstractmethod
    def identity(self) -> str:
        pass

    @abstractmethod
    async def complete(self, request: CompletionRequest) -> str:
        pass


class EmbeddingService(ABC):
    """What use cases see: cached, validated embeddings"""

    @property
    @abstractmethod
    def identity(self) -> str:
        pass

    @abstractmethod
    async def embed(self, texts: Sequence[str]) -> List[Embedding]:
        pass
