from typing import Any, Dict, Iterable, List, Optional, Set

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .artifact import Artifact, Layer
from .trace_link import TraceLink


def sorted_links(links: Iterable[TraceLink]) -> List[TraceLink]:
    """Deterministic link order: parent, child, score"""
    return sorted(links, key=lambda link: (link.parent_id, link.child_id, link.score))


class ArtifactTree(BaseModel):
    """Layers of artifacts plus the trace links between them"""
    model_config = ConfigDict(frozen=True)

    project_name: str
    layers: List[Layer] = Field(default_factory=list)
    links: List[TraceLink] = Field(default_factory=list)
    provenance: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("links")
    @classmethod
    def sort_links(cls, v: List[TraceLink]) -> List[TraceLink]:
        return sorted_links(v)

    def artifacts(self) -> Iterable[Artifact]:
        for layer in self.layers:
            yield from layer.artifacts

    def artifact_index(self) -> Dict[str, Artifact]:
        """Map artifact id to artifact (first occurrence wins)"""
        index: Dict[str, Artifact] = {}
        for artifact in self.artifacts():
            index.setdefault(artifact.id, artifact)
        return index

    def get(self, artifact_id: str) -> Optional[Artifact]:
        return self.artifact_index().get(artifact_id)

    def layer(self, index: int) -> Optional[Layer]:
        for layer in self.layers:
            if layer.index == index:
                return layer
        return None

    @property
    def top(self) -> Optional[Layer]:
        return self.layers[-1] if self.layers else None

    def children_of(self, parent_id: str) -> List[str]:
        return [link.child_id for link in self.links if link.parent_id == parent_id]

    def parented_ids(self) -> Set[str]:
        """Ids that appear as a child in at least one link"""
        return {link.child_id for link in self.links}

    def with_layer(self, layer: Layer, links: Iterable[TraceLink]) -> "ArtifactTree":
        """Return a copy with one more layer and its links"""
        return self.model_copy(
            update={
                "layers": [*self.layers, layer],
                "links": sorted_links([*self.links, *links]),
            }
        )

    def with_provenance(self, **entries: Any) -> "ArtifactTree":
        return self.model_copy(update={"provenance": {**self.provenance, **entries}})
