"""
Artifact tree JSON document

Canonical form: UTF-8, keys sorted, two-space indent, links ordered by
(parent, child). Artifacts carry no layer fields; they come from the
enclosing layer.
"""
import json
import logging
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ...domain.entities import Artifact, ArtifactTree, Layer, TraceLink
from ...domain.exceptions import TreeParseError

logger = logging.getLogger(__name__)


class ArtifactDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    title: str
    body: str
    source_path: Optional[str] = None
    size: int = Field(..., ge=0)


class LayerDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    index: int = Field(..., ge=0)
    artifact_type: str
    artifacts: List[ArtifactDocument] = Field(default_factory=list)


class LinkDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    parent: str
    child: str
    score: float


class TreeDocument(BaseModel):
    """Top-level tree document"""
    model_config = ConfigDict(extra="forbid")

    project: str
    layers: List[LayerDocument] = Field(default_factory=list)
    links: List[LinkDocument] = Field(default_factory=list)
    provenance: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_tree(cls, tree: ArtifactTree) -> "TreeDocument":
        return cls(
            project=tree.project_name,
            layers=[
                LayerDocument(
                    index=layer.index,
                    artifact_type=layer.artifact_type,
                    artifacts=[
                        ArtifactDocument(
                            id=a.id,
                            title=a.title,
                            body=a.body,
                            source_path=a.source_path,
                            size=a.size,
                        )
                        for a in layer.artifacts
                    ],
                )
                for layer in tree.layers
            ],
            links=[
                LinkDocument(
                    parent=link.parent_id, child=link.child_id, score=link.score
                )
                for link in tree.links
            ],
            provenance=dict(tree.provenance),
        )

    def to_tree(self) -> ArtifactTree:
        return ArtifactTree(
            project_name=self.project,
            layers=[
                Layer(
                    index=layer.index,
                    artifact_type=layer.artifact_type,
                    artifacts=[
                        Artifact(
                            id=a.id,
                            layer_index=layer.index,
                            artifact_type=layer.artifact_type,
                            title=a.title,
                            body=a.body,
                            source_path=a.source_path,
                            size=a.size,
                        )
                        for a in layer.artifacts
                    ],
                )
                for layer in self.layers
            ],
            links=[
                TraceLink(parent_id=link.parent, child_id=link.child, score=link.score)
                for link in self.links
            ],
            provenance=self.provenance,
        )


def error_path(loc: tuple) -> str:
    """('layers', 0, 'artifacts', 2, 'title') -> 'layers[0].artifacts[2].title'"""
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path or "<root>"


def save_tree(tree: ArtifactTree) -> bytes:
    """Serialize tree to canonical JSON bytes"""
    document = TreeDocument.from_tree(tree).model_dump(mode="json")
    text = json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def load_tree(data: bytes) -> ArtifactTree:
    """Parse tree JSON; structural invariants are left to validate_tree"""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise TreeParseError("document is not UTF-8", f"byte {e.start}") from e
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise TreeParseError(e.msg, f"{e.lineno}:{e.colno}") from e
    try:
        document = TreeDocument.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        raise TreeParseError(first["msg"], error_path(first["loc"])) from e
    return document.to_tree()
