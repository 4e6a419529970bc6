from abc import abstractmethod

from .base import BaseRepository
from ..entities.artifact_tree import ArtifactTree


class TreeRepository(BaseRepository[ArtifactTree]):
    """Artifact tree storage interface"""

    @abstractmethod
    def encode(self, tree: ArtifactTree) -> bytes:
        """Serialize tree to its canonical document"""
        pass

    @abstractmethod
    def decode(self, data: bytes) -> ArtifactTree:
        """Parse a tree document"""
        pass
