"""
Pipeline configuration file

YAML document mirroring PipelineConfig. API keys never live here; only the
name of the environment variable that holds them.
"""
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ...domain.exceptions import ConfigError
from ...domain.value_objects.common import digest
from ...domain.value_objects.params import ClusterParams, LayerSpec, LinkParams

logger = logging.getLogger(__name__)


class ProviderKind(str, Enum):
    """Provider implementation enumeration"""
    HTTP_COMPLETION = "http-completion"
    HTTP_EMBEDDING = "http-embedding"
    MOCK = "mock"


class ProviderConfig(BaseModel):
    """Connection settings for one provider"""
    model_config = ConfigDict(frozen=True)

    kind: ProviderKind = Field(default=ProviderKind.MOCK)
    endpoint: Optional[str] = Field(default=None, description="POST URL for http kinds")
    api_key_env: str = Field(
        default="", description="Name of the env var holding the API key"
    )
    api_key_header: str = Field(default="x-api-key")
    api_key_prefix: str = Field(default="", description="e.g. 'Bearer '")
    extra_headers: Dict[str, str] = Field(default_factory=dict)
    model_name: str = Field(default="mock")
    timeout: float = Field(default=60.0, gt=0, description="Seconds")
    max_retries: int = Field(default=2, ge=0, le=10)
    retry_backoff: float = Field(
        default=0.5, ge=0, description="Base backoff in seconds"
    )
    parallelism: int = Field(default=4, ge=1)
    response_pointer: str = Field(
        default="/content/0/text", description="JSON pointer to the completion text"
    )
    batch_size: int = Field(default=32, ge=1, description="Texts per embedding request")
    mock_dim: int = Field(default=256, gt=0)
    mock_responses_path: Optional[str] = None

    @model_validator(mode="after")
    def endpoint_for_http(self) -> "ProviderConfig":
        if self.kind != ProviderKind.MOCK and not self.endpoint:
            raise ValueError(f"Provider kind '{self.kind.value}' requires an endpoint")
        return self

    @property
    def is_http(self) -> bool:
        return self.kind != ProviderKind.MOCK


class SourceConfig(BaseModel):
    """Where the code lives"""
    model_config = ConfigDict(frozen=True)

    root: str = Field(default=".")
    include: List[str] = Field(default_factory=lambda: ["**/*"])
    exclude: List[str] = Field(default_factory=list)


class PipelineConfig(BaseModel):
    """Everything a generate or baseline run needs"""
    model_config = ConfigDict(frozen=True)

    project_name: str = Field(default="project")
    source: SourceConfig = Field(default_factory=SourceConfig)
    layers: List[LayerSpec] = Field(
        ..., min_length=1, description="Bottom-up, layer 0 excluded"
    )
    cluster: ClusterParams = Field(default_factory=ClusterParams)
    links: LinkParams = Field(default_factory=LinkParams)
    completion: ProviderConfig = Field(default_factory=ProviderConfig)
    embedding: ProviderConfig = Field(default_factory=ProviderConfig)
    cache_dir: Optional[str] = Field(
        default=None, description="Overrides the settings cache dir"
    )
    seed: int = Field(default=0)
    baseline_cutoff: float = Field(default=0.7)
    summary_token_budget: int = Field(
        default=24000, gt=0, description="Per-chunk budget for Stage 0"
    )
    baseline_batch_tokens: int = Field(default=24000, gt=0)
    skip_failed_sources: bool = Field(default=False)
    debug_dir: Optional[str] = None

    @model_validator(mode="after")
    def seed_flows_into_clustering(self) -> "PipelineConfig":
        if self.cluster.seed != self.seed:
            seeded = self.cluster.model_copy(update={"seed": self.seed})
            object.__setattr__(self, "cluster", seeded)
        return self

    def digest(self) -> str:
        """Digest of the canonical config, excluding run-local paths"""
        return digest(self.model_dump(mode="json", exclude={"cache_dir", "debug_dir"}))

    def with_overrides(
        self,
        seed: Optional[int] = None,
        provider: Optional[str] = None,
        source_root: Optional[str] = None,
        cache_dir: Optional[str] = None,
        debug_dir: Optional[str] = None,
    ) -> "PipelineConfig":
        """Return a copy with CLI overrides applied"""
        data: Dict[str, Any] = self.model_dump(mode="json")
        if seed is not None:
            data["seed"] = seed
            data["cluster"]["seed"] = seed
        if provider == "mock":
            data["completion"]["kind"] = ProviderKind.MOCK.value
            data["embedding"]["kind"] = ProviderKind.MOCK.value
        elif provider == "http":
            data["completion"]["kind"] = ProviderKind.HTTP_COMPLETION.value
            data["embedding"]["kind"] = ProviderKind.HTTP_EMBEDDING.value
        elif provider is not None:
            raise ConfigError(
                f"Unknown provider switch '{provider}' (expected mock or http)"
            )
        if source_root is not None:
            data["source"]["root"] = source_root
        if cache_dir is not None:
            data["cache_dir"] = cache_dir
        if debug_dir is not None:
            data["debug_dir"] = debug_dir
        return _parse(data, "<overrides>")


def _parse(data: Any, origin: str) -> PipelineConfig:
    try:
        return PipelineConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise ConfigError(f"{origin}: {location}: {first['msg']}") from e


def load_pipeline_config(path: str) -> PipelineConfig:
    """Load and validate a YAML pipeline config"""
    config_path = Path(path)
    try:
        text = config_path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {e}") from e
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(f"Config {path} is not valid YAML: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Config {path} must be a mapping")
    config = _parse(data, path)
    logger.debug(f"Loaded pipeline config {path} ({len(config.layers)} layers)")
    return config


def default_pipeline_config(layer_types: Optional[List[str]] = None) -> PipelineConfig:
    """Agile hierarchy defaults used when no config file is given"""
    types = layer_types or ["user story", "epic"]
    return PipelineConfig(layers=[LayerSpec(artifact_type=t) for t in types])
