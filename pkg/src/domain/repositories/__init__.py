from .base import BaseRepository
from .response_cache import ResponseCache
from .tree_repository import TreeRepository

__all__ = ["BaseRepository", "ResponseCache", "TreeRepository"]
