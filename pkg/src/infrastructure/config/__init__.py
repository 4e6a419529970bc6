from .pipeline_config import (
    PipelineConfig,
    ProviderConfig,
    ProviderKind,
    SourceConfig,
    default_pipeline_config,
    load_pipeline_config,
)
from .settings import Settings, settings

__all__ = [
    "PipelineConfig",
    "ProviderConfig",
    "ProviderKind",
    "Settings",
    "SourceConfig",
    "default_pipeline_config",
    "load_pipeline_config",
    "settings",
]
