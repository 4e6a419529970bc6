from abc import ABC

from pydantic import BaseModel, ConfigDict, Field


class BaseEntity(BaseModel, ABC):
    """Base entity class"""
    model_config = ConfigDict(frozen=True)

    id: str = Field(..., min_length=1)

    def __hash__(self) -> int:
        return hash(self.id)
