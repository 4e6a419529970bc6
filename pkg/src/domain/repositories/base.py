from abc import ABC, abstractmethod
from typing import Generic, Optional, TypeVar

T = TypeVar("T")


class BaseRepository(ABC, Generic[T]):
    """Base repository interface"""

    @abstractmethod
    async def save(self, key: str, entity: T) -> T:
        """Save entity under key"""
        pass

    @abstractmethod
    async def get(self, key: str) -> Optional[T]:
        """Get entity by key"""
        pass

    @abstractmethod
    async def exists(self, key: str) -> bool:
        """Check if entity exists"""
        pass
