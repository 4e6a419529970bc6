"""
Cache infrastructure package

Provider response caches: JSON-lines file (default) and Redis.
"""

from .redis_cache import RedisResponseCache
from .redis_client import RedisClient
from .response_cache import JsonlResponseCache, MemoryResponseCache

__all__ = [
    "JsonlResponseCache",
    "MemoryResponseCache",
    "RedisClient",
    "RedisResponseCache",
]
