"""
Provider gateway

Wraps raw providers with the response cache, a parallelism bound and
retries. Only successful responses are cached; cache keys cover the
provider identity so switching models never reuses stale replies.
"""
import asyncio
import logging
from typing import Awaitable, Callable, Dict, List, Optional, Sequence, Set, TypeVar

from ...application.interfaces.providers import (
    CompletionProvider,
    CompletionService,
    EmbeddingProvider,
    EmbeddingService,
)
from ...domain.exceptions import ProviderContentError, RetriableProviderError
from ...domain.repositories.response_cache import ResponseCache
from ...domain.value_objects.common import digest
from ...domain.value_objects.completion import CompletionRequest
from ...domain.value_objects.embedding import Embedding

logger = logging.getLogger(__name__)

T = TypeVar("T")


async def with_retries(
    call: Callable[[], Awaitable[T]],
    max_retries: int,
    backoff: float,
    label: str,
) -> T:
    """Run call, retrying retriable failures max_retries times with backoff"""
    attempt = 0
    while True:
        try:
            return await call()
        except RetriableProviderError as e:
            if attempt >= max_retries:
                logger.error(f"{label} failed after {attempt + 1} attempts: {e}")
                raise
            delay = backoff * (2 ** attempt)
            attempt += 1
            logger.warning(
                f"{label} attempt {attempt} failed ({e}); retrying in {delay:.2f}s"
            )
            if delay > 0:
                await asyncio.sleep(delay)


class CompletionGateway(CompletionService):
    """Cached, bounded, retried completion"""

    def __init__(
        self,
        provider: CompletionProvider,
        cache: ResponseCache,
        parallelism: int = 4,
        max_retries: int = 2,
        retry_backoff: float = 0.5,
    ):
        self.provider = provider
        self.cache = cache
        self.max_retries = max_retries
        self.retry_backoff = retry_backoff
        self._semaphore = asyncio.Semaphore(parallelism)
        self.hits = 0
        self.misses = 0

    @property
    def identity(self) -> str:
        return self.provider.identity

    def cache_key(self, request: CompletionRequest) -> str:
        return digest(
            {
                "kind": "completion",
                "provider": self.identity,
                "request": request.digest(),
            }
        )

    async def complete(self, request: CompletionRequest) -> str:
        key = self.cache_key(request)
        cached = await self.cache.get(key)
        if isinstance(cached, str):
            self.hits += 1
            return cached
        self.misses += 1
        async with self._semaphore:
            text = await with_retries(
                lambda: self.provider.complete(request),
                self.max_retries,
                self.retry_backoff,
                f"Completion {request.digest()[:12]}",
            )
        if not text or not text.strip():
            raise ProviderContentError(
                "Provider returned an empty completion", request.digest()
            )
        await self.cache.save(key, text)
        return text


class EmbeddingGateway(EmbeddingService):
    """Cached, batched, validated embeddings"""

    def __init__(
        self,
        provider: EmbeddingProvider,
        cache: ResponseCache,
        parallelism: int = 4,
        max_retries: int = 2,
        retry_backoff: float = 0.5,
        batch_size: int = 32,
    ):
        self.provider = provider
        self.cache = cache
        self.max_retries = max_retries
        self.retry_backoff = retry_backoff
        self.batch_size = batch_size
        self._semaphore = asyncio.Semaphore(parallelism)
        self._dim: Optional[int] = None
        self.hits = 0
        self.misses = 0

    @property
    def identity(self) -> str:
        return self.provider.identity

    def cache_key(self, text: str) -> str:
        return digest({"kind": "embedding", "provider": self.identity, "text": text})

    def _check(self, embedding: Embedding, text_digest: str) -> Embedding:
        if self._dim is None:
            self._dim = embedding.dim
        elif embedding.dim != self._dim:
            raise ProviderContentError(
                f"Embedding dimension changed from {self._dim} to {embedding.dim}",
                text_digest,
            )
        if embedding.is_zero():
            raise ProviderContentError(
                "Provider returned a zero embedding", text_digest
            )
        return embedding

    async def _embed_batch(self, texts: List[str]) -> List[Embedding]:
        async with self._semaphore:
            vectors = await with_retries(
                lambda: self.provider.embed(texts),
                self.max_retries,
                self.retry_backoff,
                f"Embedding batch of {len(texts)}",
            )
        if len(vectors) != len(texts):
            raise ProviderContentError(
                f"Expected {len(texts)} embeddings, got {len(vectors)}", digest(texts)
            )
        return list(vectors)

    async def embed(self, texts: Sequence[str]) -> List[Embedding]:
        """Embeddings for texts in order; duplicate texts are embedded once"""
        found: Dict[str, Embedding] = {}
        missing: List[str] = []
        pending: Set[str] = set()
        for text in texts:
            if text in found or text in pending:
                continue
            cached = await self.cache.get(self.cache_key(text))
            if isinstance(cached, list) and cached:
                found[text] = self._check(Embedding.from_values(cached), digest(text))
                self.hits += 1
            else:
                missing.append(text)
                pending.add(text)

        if missing:
            self.misses += len(missing)
            size = self.batch_size
            batches = [missing[i : i + size] for i in range(0, len(missing), size)]
            results = await asyncio.gather(
                *(self._embed_batch(batch) for batch in batches)
            )
            for batch, vectors in zip(batches, results):
                for text, vector in zip(batch, vectors):
                    found[text] = self._check(vector, digest(text))
                    await self.cache.save(self.cache_key(text), list(vector.values))
            logger.debug(
                f"Embedded {len(missing)} texts in {len(batches)} batches"
            )

        return [found[text] for text in texts]
