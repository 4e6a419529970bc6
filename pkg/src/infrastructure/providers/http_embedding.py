"""
HTTP embedding provider

POSTs {model, input: [texts]} and expects {data: [{embedding: [...]}, ...]}
in input order.
"""
import logging
from typing import List, Optional, Sequence

import httpx

from ...application.interfaces.providers import EmbeddingProvider
from ...domain.exceptions import ProviderContentError, RetriableProviderError
from ...domain.value_objects.common import digest
from ...domain.value_objects.embedding import Embedding
from ..config.pipeline_config import ProviderConfig
from .http_completion import build_headers, check_status

logger = logging.getLogger(__name__)


class HttpEmbeddingProvider(EmbeddingProvider):
    """Embeddings over an OpenAI-style HTTP API"""

    def __init__(
        self,
        config: ProviderConfig,
        api_key: Optional[str] = None,
        client: Optional[httpx.AsyncClient] = None,
    ):
        self.config = config
        self._client = client or httpx.AsyncClient(
            timeout=config.timeout, headers=build_headers(config, api_key)
        )
        self._owns_client = client is None

    @property
    def identity(self) -> str:
        return f"http-embedding/{self.config.model_name}"

    async def embed(self, texts: Sequence[str]) -> List[Embedding]:
        batch_digest = digest(list(texts))
        body = {"model": self.config.model_name, "input": list(texts)}
        try:
            response = await self._client.post(self.config.endpoint, json=body)
        except httpx.HTTPError as e:
            raise RetriableProviderError(f"Transport failure: {e}", batch_digest) from e
        check_status(response, batch_digest)
        try:
            rows = [item["embedding"] for item in response.json()["data"]]
        except (ValueError, KeyError, TypeError) as e:
            raise ProviderContentError(
                "Embedding reply has no data[].embedding", batch_digest
            ) from e
        if len(rows) != len(texts):
            raise ProviderContentError(
                f"Expected {len(texts)} embeddings, got {len(rows)}", batch_digest
            )
        try:
            return [Embedding.from_values(row) for row in rows]
        except ValueError as e:
            raise ProviderContentError(f"Malformed embedding: {e}", batch_digest) from e

    async def aclose(self) -> None:
        if self._owns_client:
            await self._client.aclose()
