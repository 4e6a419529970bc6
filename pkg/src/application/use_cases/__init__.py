"""
Application use cases
"""
from .baseline_use_cases import BaselineUseCases, batch_artifacts, cutoff_links
from .evaluation_use_cases import EvaluationUseCases
from .export_use_cases import ExportUseCases
from .generation_use_cases import GenerationUseCases, parse_items
from .pipeline_use_cases import PipelineResult, PipelineUseCases
from .summarize_use_cases import CODE_ARTIFACT_TYPE, SummarizeUseCases

__all__ = [
    "BaselineUseCases",
    "batch_artifacts",
    "cutoff_links",
    "EvaluationUseCases",
    "ExportUseCases",
    "GenerationUseCases",
    "parse_items",
    "PipelineResult",
    "PipelineUseCases",
    "CODE_ARTIFACT_TYPE",
    "SummarizeUseCases",
]
