"""
Build gateways from a pipeline config
"""
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ...application.interfaces.providers import CompletionProvider, EmbeddingProvider
from ...domain.exceptions import ConfigError, ProviderAuthError
from ...domain.repositories.response_cache import ResponseCache
from ..cache import JsonlResponseCache, RedisClient, RedisResponseCache
from ..config.pipeline_config import PipelineConfig, ProviderConfig, ProviderKind
from ..config.settings import Settings, settings as default_settings
from .gateway import CompletionGateway, EmbeddingGateway
from .http_completion import HttpCompletionProvider
from .http_embedding import HttpEmbeddingProvider
from .mock import MockCompletionProvider, MockEmbeddingProvider

logger = logging.getLogger(__name__)


@dataclass
class Providers:
    """Gateways plus the resources they own"""
    completion: CompletionGateway
    embedding: EmbeddingGateway
    cache: ResponseCache

    async def aclose(self) -> None:
        await self.completion.provider.aclose()
        await self.embedding.provider.aclose()
        await self.cache.close()


def _api_key(config: ProviderConfig) -> Optional[str]:
    if not config.api_key_env:
        return None
    value = os.environ.get(config.api_key_env)
    if not value:
        raise ProviderAuthError(f"Environment variable {config.api_key_env} is not set")
    return value


def build_completion_provider(config: ProviderConfig) -> CompletionProvider:
    if config.kind == ProviderKind.MOCK:
        if config.mock_responses_path:
            return MockCompletionProvider.from_file(
                config.mock_responses_path, model_name=config.model_name
            )
        return MockCompletionProvider(model_name=config.model_name)
    if config.kind != ProviderKind.HTTP_COMPLETION:
        raise ConfigError(
            f"Provider kind '{config.kind.value}' cannot serve completions"
        )
    return HttpCompletionProvider(config, api_key=_api_key(config))


def build_embedding_provider(config: ProviderConfig) -> EmbeddingProvider:
    if config.kind == ProviderKind.MOCK:
        return MockEmbeddingProvider(dim=config.mock_dim)
    if config.kind != ProviderKind.HTTP_EMBEDDING:
        raise ConfigError(
            f"Provider kind '{config.kind.value}' cannot serve embeddings"
        )
    return HttpEmbeddingProvider(config, api_key=_api_key(config))


async def build_cache(config: PipelineConfig, settings: Settings) -> ResponseCache:
    """Response cache selected by settings.cache_backend"""
    if settings.cache_backend == "redis":
        client = RedisClient(settings.redis_url)
        await client.connect()
        return RedisResponseCache(client, settings.redis_key_prefix, settings.redis_ttl)
    if settings.cache_backend != "jsonl":
        raise ConfigError(
            f"Unknown cache backend '{settings.cache_backend}' "
            "(expected jsonl or redis)"
        )
    cache_dir = Path(config.cache_dir or settings.cache_dir)
    return JsonlResponseCache(str(cache_dir))


async def build_providers(
    config: PipelineConfig, settings: Optional[Settings] = None
) -> Providers:
    """Fail fast on missing credentials before any work starts"""
    settings = settings or default_settings
    completion_provider = build_completion_provider(config.completion)
    embedding_provider = build_embedding_provider(config.embedding)
    cache = await build_cache(config, settings)
    logger.info(
        f"Providers: completion={completion_provider.identity} "
        f"embedding={embedding_provider.identity} cache={settings.cache_backend}"
    )
    return Providers(
        completion=CompletionGateway(
            completion_provider,
            cache,
            parallelism=config.completion.parallelism,
            max_retries=config.completion.max_retries,
            retry_backoff=config.completion.retry_backoff,
        ),
        embedding=EmbeddingGateway(
            embedding_provider,
            cache,
            parallelism=config.embedding.parallelism,
            max_retries=config.embedding.max_retries,
            retry_backoff=config.embedding.retry_backoff,
            batch_size=config.embedding.batch_size,
        ),
        cache=cache,
    )
