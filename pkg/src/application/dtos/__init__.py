"""
Data Transfer Objects
"""
from .evaluation_dto import EvalReport
from .generation_dto import (
    CandidateRecord,
    CandidateStatus,
    FlaggedPairRecord,
    GenerationRecord,
    LayerDiagnostics,
)

__all__ = [
    "EvalReport",
    "CandidateRecord",
    "CandidateStatus",
    "FlaggedPairRecord",
    "GenerationRecord",
    "LayerDiagnostics",
]
