"""
Generation and layer diagnostics DTOs
"""
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator


class CandidateStatus(str, Enum):
    """What consensus clustering did with a candidate"""
    DISCARDED_LARGE = "discarded-large"
    SET_ASIDE = "set-aside"
    ADMITTED = "admitted"
    EXCLUDED_SIZE = "excluded-size"
    EXCLUDED_COHESION = "excluded-cohesion"


class CandidateRecord(BaseModel):
    """One row of the candidate-pool dump"""
    members: List[str] = Field(..., description="Candidate members as pooled")
    size: int = Field(..., ge=1)
    votes: int = Field(..., ge=1)
    origin: List[str] = Field(
        default_factory=list, description="Techniques that produced it"
    )
    cohesion: Optional[float] = None
    importance: Optional[float] = None
    rank: Optional[int] = Field(None, description="Position after ranking")
    ejected: List[str] = Field(
        default_factory=list, description="Members removed by cleansing"
    )
    status: CandidateStatus
    final_members: List[str] = Field(
        default_factory=list, description="Members after selection and orphan joins"
    )
    oversized_after_orphans: bool = Field(default=False)


class GenerationRecord(BaseModel):
    """Which artifacts a cluster produced and why that many"""
    cluster_ref: str = Field(..., description="Stable reference of the source cluster")
    source_ids: List[str] = Field(..., min_length=1)
    generated_ids: List[str] = Field(default_factory=list)
    n_targets: int = Field(..., ge=1)
    concept_diversity: float = Field(..., gt=0, le=1)
    information_density: float = Field(..., ge=0)
    regenerated: bool = Field(default=False)
    replaced_ids: List[str] = Field(
        default_factory=list,
        description="Generated ids later replaced by regeneration",
    )

    @model_validator(mode="after")
    def count_matches_target(self) -> "GenerationRecord":
        if self.generated_ids and len(self.generated_ids) != self.n_targets:
            raise ValueError(
                f"{len(self.generated_ids)} generated ids "
                f"for n_targets {self.n_targets}"
            )
        return self


class FlaggedPairRecord(BaseModel):
    first: str
    second: str
    score: float
    merged: Optional[str] = Field(None, description="Id removed by the merge, if any")


class LayerDiagnostics(BaseModel):
    """Everything run_layer decided, for debug dumps and tests"""
    layer_index: int
    artifact_type: str
    format_template: str
    candidates: List[CandidateRecord] = Field(default_factory=list)
    clusters: List[List[str]] = Field(default_factory=list)
    singletons: List[str] = Field(default_factory=list)
    generation_records: List[GenerationRecord] = Field(default_factory=list)
    duplicate_groups: List[List[str]] = Field(default_factory=list)
    similarity_parents: List[str] = Field(default_factory=list)
    similarity_children: List[str] = Field(default_factory=list)
    similarity: List[List[float]] = Field(default_factory=list)
    flagged: List[FlaggedPairRecord] = Field(default_factory=list)
    link_counts: Dict[str, int] = Field(default_factory=dict)
