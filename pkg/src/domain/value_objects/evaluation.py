from typing import FrozenSet, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

LinkKey = Tuple[str, str]


class GroundTruth(BaseModel):
    """Expert-reviewed link set"""
    model_config = ConfigDict(frozen=True)

    approved: FrozenSet[LinkKey] = Field(default_factory=frozenset)
    added: FrozenSet[LinkKey] = Field(default_factory=frozenset)

    @property
    def links(self) -> FrozenSet[LinkKey]:
        """Truth set: approved plus expert additions"""
        return self.approved | self.added

    def artifact_ids(self) -> FrozenSet[str]:
        return frozenset(i for pair in self.links for i in pair)


class ConceptAnnotation(BaseModel):
    """Concept from reference documentation and where it shows up"""
    model_config = ConfigDict(frozen=True)

    concept: str = Field(..., min_length=1)
    present_in_ids: FrozenSet[str] = Field(default_factory=frozenset)

    @property
    def covered(self) -> bool:
        return bool(self.present_in_ids)


def unique_concepts(annotations: List[ConceptAnnotation]) -> List[ConceptAnnotation]:
    """Reject duplicate concept labels"""
    seen = set()
    for annotation in annotations:
        if annotation.concept in seen:
            raise ValueError(f"Duplicate concept label '{annotation.concept}'")
        seen.add(annotation.concept)
    return annotations


class ConceptSet(BaseModel):
    """Annotated concepts plus the size of the layer they were checked against"""
    model_config = ConfigDict(frozen=True)

    annotations: List[ConceptAnnotation] = Field(default_factory=list)
    generated_count: int = Field(default=0, ge=0)

    @field_validator("annotations")
    @classmethod
    def labels_unique(cls, v: List[ConceptAnnotation]) -> List[ConceptAnnotation]:
        return unique_concepts(v)
