from abc import abstractmethod
from typing import Any, Optional

from .base import BaseRepository


class ResponseCache(BaseRepository[Any]):
    """Content-addressed provider response cache"""

    @abstractmethod
    async def get(self, key: str) -> Optional[Any]:
        """Get cached JSON value by request digest"""
        pass

    async def close(self) -> None:
        """Release resources"""
        return None
