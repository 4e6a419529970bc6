from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field


class TraceLink(BaseModel):
    """Directed parent -> child relation between adjacent layers"""
    model_config = ConfigDict(frozen=True)

    parent_id: str
    child_id: str
    score: float = Field(default=0.0)

    @classmethod
    def create(cls, parent_id: str, child_id: str, similarity: float) -> "TraceLink":
        """Create link storing the raw cosine clipped to [0, 1]"""
        score = max(0.0, min(1.0, float(similarity)))
        return cls(parent_id=parent_id, child_id=child_id, score=score)

    @property
    def key(self) -> Tuple[str, str]:
        return (self.parent_id, self.child_id)
