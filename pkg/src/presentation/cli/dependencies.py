"""
Dependency wiring for CLI commands
"""
import logging
from contextlib import asynccontextmanager
from dataclasses import dataclass
from typing import AsyncIterator, Optional

from ...application.services.cluster_engine import ClusterEngine
from ...application.use_cases import (
    BaselineUseCases,
    GenerationUseCases,
    PipelineUseCases,
    SummarizeUseCases,
)
from ...domain.exceptions import ConfigError
from ...infrastructure.clustering import SklearnClusteringBackend
from ...infrastructure.config import (
    PipelineConfig,
    default_pipeline_config,
    load_pipeline_config,
)
from ...infrastructure.config.settings import Settings, settings as default_settings
from ...infrastructure.prompts import PromptLibrary
from ...infrastructure.providers import Providers, build_providers

logger = logging.getLogger(__name__)


def resolve_config(
    config_path: Optional[str],
    src: Optional[str],
    seed: Optional[int] = None,
    provider: Optional[str] = None,
    cache_dir: Optional[str] = None,
    debug_dir: Optional[str] = None,
    settings: Optional[Settings] = None,
) -> PipelineConfig:
    """Config file (or defaults) with CLI overrides applied; overrides win"""
    settings = settings or default_settings
    if config_path:
        config = load_pipeline_config(config_path)
    else:
        config = default_pipeline_config()
        provider = provider or settings.default_provider
    if not config_path and not src:
        raise ConfigError("No source tree: pass --src or a --config with source.root")
    return config.with_overrides(
        seed=seed,
        provider=provider,
        source_root=src,
        cache_dir=cache_dir,
        debug_dir=debug_dir,
    )


@dataclass
class Container:
    """Everything one command needs"""
    config: PipelineConfig
    providers: Providers
    summarizer: SummarizeUseCases
    generator: GenerationUseCases
    pipeline: PipelineUseCases
    baseline: BaselineUseCases


@asynccontextmanager
async def container(
    config: PipelineConfig, settings: Optional[Settings] = None
) -> AsyncIterator[Container]:
    """Build providers and use cases; release provider resources on exit"""
    settings = settings or default_settings
    providers = await build_providers(config, settings)
    try:
        prompts = PromptLibrary()
        engine = ClusterEngine(SklearnClusteringBackend(), config.cluster)
        summarizer = SummarizeUseCases(
            providers.completion, prompts, config.summary_token_budget
        )
        generator = GenerationUseCases(providers.completion, prompts, engine)
        provenance = {
            "config_digest": config.digest(),
            "seed": config.seed,
            "completion_provider": providers.completion.identity,
            "embedding_provider": providers.embedding.identity,
            "tool_version": settings.version,
        }
        pipeline = PipelineUseCases(
            config, summarizer, generator, engine, providers.embedding, provenance
        )
        baseline = BaselineUseCases(pipeline, generator, providers.completion, prompts)
        yield Container(config, providers, summarizer, generator, pipeline, baseline)
    finally:
        await providers.aclose()
        logger.debug(
            f"Cache hits: completion {providers.completion.hits}, "
            f"embedding {providers.embedding.hits}; "
            f"misses: completion {providers.completion.misses}, "
            f"embedding {providers.embedding.misses}"
        )
