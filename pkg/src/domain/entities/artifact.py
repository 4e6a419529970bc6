from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from .base import BaseEntity
from ..value_objects.common import content_id, word_count


class Artifact(BaseEntity):
    """One documentation unit at any layer"""
    layer_index: int = Field(..., ge=0)
    artifact_type: str
    title: str
    body: str
    source_path: Optional[str] = None
    size: int = Field(default=0, ge=0)

    @classmethod
    def create(
        cls,
        layer_index: int,
        artifact_type: str,
        title: str,
        body: str,
        source_path: Optional[str] = None,
        size: Optional[int] = None,
    ) -> "Artifact":
        """Create artifact with a content-derived id"""
        title = title.strip()
        body = body.strip()
        return cls(
            id=content_id(layer_index, artifact_type, title, body, source_path),
            layer_index=layer_index,
            artifact_type=artifact_type,
            title=title,
            body=body,
            source_path=source_path,
            size=word_count(body) if size is None else size,
        )

    def text(self) -> str:
        """Text used for embedding"""
        return f"{self.title}\n{self.body}" if self.title else self.body


class Layer(BaseModel):
    """Ordered artifacts of one hierarchy level"""
    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=0)
    artifact_type: str
    artifacts: List[Artifact] = Field(default_factory=list)

    def ids(self) -> List[str]:
        return [a.id for a in self.artifacts]

    def get(self, artifact_id: str) -> Optional[Artifact]:
        for artifact in self.artifacts:
            if artifact.id == artifact_id:
                return artifact
        return None

    def mean_size(self) -> float:
        if not self.artifacts:
            return 0.0
        return sum(a.size for a in self.artifacts) / len(self.artifacts)

    def __len__(self) -> int:
        return len(self.artifacts)
