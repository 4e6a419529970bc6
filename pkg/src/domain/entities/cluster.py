from typing import FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Cluster(BaseModel):
    """Group of artifact ids with its consensus scores"""
    model_config = ConfigDict(frozen=True)

    member_ids: Tuple[str, ...] = Field(..., min_length=1)
    cohesion: Optional[float] = Field(default=None, ge=-1.0, le=1.0)
    votes: int = Field(default=1, ge=1)
    importance: Optional[float] = None
    origin: FrozenSet[str] = Field(default_factory=frozenset)

    @model_validator(mode="after")
    def unique_members(self) -> "Cluster":
        if len(set(self.member_ids)) != len(self.member_ids):
            raise ValueError("Cluster members must be unique")
        return self

    @property
    def size(self) -> int:
        return len(self.member_ids)

    @property
    def key(self) -> FrozenSet[str]:
        """Membership set used for vote counting"""
        return frozenset(self.member_ids)

    def first_member(self) -> str:
        return min(self.member_ids)


class Clustering(BaseModel):
    """Final clusters and singletons for one layer"""
    model_config = ConfigDict(frozen=True)

    layer_index: int = Field(default=0, ge=0)
    clusters: List[Cluster] = Field(default_factory=list)
    singletons: List[str] = Field(default_factory=list)

    def covered_ids(self) -> List[str]:
        ids = [i for cluster in self.clusters for i in cluster.member_ids]
        return ids + list(self.singletons)
