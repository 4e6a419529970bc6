from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ClusteringTechnique(str, Enum):
    """Clustering technique enumeration"""
    OPTICS = "optics"
    SPECTRAL = "spectral"
    AGGLOMERATIVE = "agglomerative"
    AFFINITY = "affinity"
    KMEANS = "kmeans"


class Normalization(str, Enum):
    """Score normalization used for intra-cluster linking"""
    MINMAX = "minmax"
    RAW_MAX = "raw-max"


class ClusterParams(BaseModel):
    """Knobs for consensus clustering"""
    model_config = ConfigDict(frozen=True)

    alpha: float = Field(default=0.1, description="Size weight in the importance score")
    large_cluster_min: int = Field(
        default=5, ge=2, description="Candidates this large are discarded"
    )
    outlier_sigma: float = Field(
        default=1.5, gt=0, description="Cleansing threshold in std units"
    )
    selection_cohesion_percentile: float = Field(default=25.0, ge=0, le=100)
    orphan_tolerance: float = Field(default=0.1, ge=0)
    technique_set: List[ClusteringTechnique] = Field(
        default_factory=lambda: [
            ClusteringTechnique.OPTICS,
            ClusteringTechnique.SPECTRAL,
            ClusteringTechnique.AGGLOMERATIVE,
            ClusteringTechnique.AFFINITY,
            ClusteringTechnique.KMEANS,
        ]
    )
    seed: int = Field(default=0)

    # technique knobs
    affinity_damping: float = Field(default=0.9, ge=0.5, lt=1.0)
    affinity_max_iter: int = Field(default=200, gt=0)
    optics_min_samples: int = Field(default=2, ge=2)
    optics_xi: float = Field(default=0.05, gt=0, lt=1)
    kmeans_n_init: int = Field(default=10, gt=0)

    @field_validator("technique_set")
    @classmethod
    def unique_techniques(
        cls, v: List[ClusteringTechnique]
    ) -> List[ClusteringTechnique]:
        if not v:
            raise ValueError("At least one clustering technique is required")
        if len(set(v)) != len(v):
            raise ValueError("Clustering techniques must be unique")
        return v

    def cluster_count(self, n_items: int) -> int:
        """Target cluster count for k-based techniques"""
        return max(2, round(n_items / 3))


class LinkParams(BaseModel):
    """Knobs for trace-link generation"""
    model_config = ConfigDict(frozen=True)

    sigma_window: float = Field(default=2.0, gt=0)
    floor_hint: float = Field(default=0.8, gt=0, description="Diagnostic only")
    duplicate_sigma: float = Field(default=2.0, gt=0)
    share_tolerance: float = Field(default=0.1, gt=0)
    normalization: Normalization = Field(default=Normalization.MINMAX)


class LayerSpec(BaseModel):
    """Description of one generated layer"""
    model_config = ConfigDict(frozen=True)

    artifact_type: str = Field(
        ..., min_length=1, description="e.g. 'user story', 'epic'"
    )
    format_template: Optional[str] = Field(
        default=None, description="Skips format generation when set"
    )
    n_target_bounds: Tuple[float, float] = Field(default=(0.5, 1.0))

    @model_validator(mode="after")
    def check_bounds(self) -> "LayerSpec":
        lower, upper = self.n_target_bounds
        if not 0 < lower < upper <= 1:
            raise ValueError("n_target_bounds must satisfy 0 < lower < upper <= 1")
        return self
