"""
Evaluation report DTO
"""
from typing import Dict, Optional

from pydantic import BaseModel, ConfigDict, Field


class EvalReport(BaseModel):
    """Traceability accuracy and coverage of one tree; absent values are None"""
    model_config = ConfigDict(populate_by_name=True)

    precision: Optional[float] = Field(None, ge=0, le=1)
    recall: Optional[float] = Field(None, ge=0, le=1)
    mean_average_precision: Optional[float] = Field(None, ge=0, le=1, alias="mAP")
    orphan_count: int = Field(default=0, ge=0)
    orphans_by_layer: Dict[int, int] = Field(default_factory=dict)
    predicted_links: int = Field(default=0, ge=0)
    truth_links: int = Field(default=0, ge=0)
    coverage_pct: Optional[float] = Field(None, ge=0, le=1)
    covered_by_pct: Optional[float] = Field(None, ge=0, le=1)
    covered_by_layer: Optional[int] = None

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)
