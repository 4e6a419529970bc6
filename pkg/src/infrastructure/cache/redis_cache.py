"""
Redis-backed response cache, shared between machines
"""

import logging
from typing import Any, Optional

from ...domain.repositories.response_cache import ResponseCache
from ..config.settings import settings
from .redis_client import RedisClient

logger = logging.getLogger(__name__)


class RedisResponseCache(ResponseCache):
    """Response cache stored under <prefix>:<digest>"""

    def __init__(
        self,
        redis_client: RedisClient,
        key_prefix: Optional[str] = None,
        ttl: Optional[int] = None,
    ):
        self.redis = redis_client
        self.key_prefix = (
            key_prefix if key_prefix is not None else settings.redis_key_prefix
        )
        self.ttl = ttl if ttl is not None else settings.redis_ttl

    def _make_key(self, key: str) -> str:
        """Create cache key with prefix"""
        if self.key_prefix:
            return f"{self.key_prefix}:{key}"
        return key

    async def get(self, key: str) -> Optional[Any]:
        return await self.redis.get_json(self._make_key(key))

    async def exists(self, key: str) -> bool:
        return await self.redis.exists(self._make_key(key))

    async def save(self, key: str, entity: Any) -> Any:
        stored = await self.redis.set_json(self._make_key(key), entity, ex=self.ttl)
        if not stored:
            logger.warning(f"Response {key[:16]} was not written to Redis")
        return entity

    async def close(self) -> None:
        await self.redis.disconnect()
