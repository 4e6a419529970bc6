from .factory import (
    Providers,
    build_cache,
    build_completion_provider,
    build_embedding_provider,
    build_providers,
)
from .gateway import CompletionGateway, EmbeddingGateway, with_retries
from .http_completion import HttpCompletionProvider, resolve_pointer
from .http_embedding import HttpEmbeddingProvider
from .mock import MockCompletionProvider, MockEmbeddingProvider

__all__ = [
    "Providers",
    "build_cache",
    "build_completion_provider",
    "build_embedding_provider",
    "build_providers",
    "CompletionGateway",
    "EmbeddingGateway",
    "with_retries",
    "HttpCompletionProvider",
    "resolve_pointer",
    "HttpEmbeddingProvider",
    "MockCompletionProvider",
    "MockEmbeddingProvider",
]
