"""
Shared fixtures
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import pytest

from src.application.services.cluster_engine import ClusterEngine
from src.application.use_cases import (
    BaselineUseCases,
    GenerationUseCases,
    PipelineUseCases,
    SummarizeUseCases,
)
from src.domain.value_objects.params import ClusterParams
from src.infrastructure.cache import MemoryResponseCache
from src.infrastructure.clustering import SklearnClusteringBackend
from src.infrastructure.config import PipelineConfig, default_pipeline_config
from src.infrastructure.prompts import PromptLibrary
from src.infrastructure.providers import (
    CompletionGateway,
    EmbeddingGateway,
    MockCompletionProvider,
    MockEmbeddingProvider,
)

FIXTURES_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture
def hero_dir() -> Path:
    return FIXTURES_DIR / "hero"


@pytest.fixture
def prompts() -> PromptLibrary:
    return PromptLibrary()


@pytest.fixture
def memory_cache() -> MemoryResponseCache:
    return MemoryResponseCache()


@pytest.fixture
def completion_provider() -> MockCompletionProvider:
    return MockCompletionProvider()


@pytest.fixture
def completion(completion_provider, memory_cache) -> CompletionGateway:
    return CompletionGateway(
        completion_provider, memory_cache, max_retries=0, retry_backoff=0
    )


@pytest.fixture
def embedding(memory_cache) -> EmbeddingGateway:
    return EmbeddingGateway(
        MockEmbeddingProvider(), memory_cache, max_retries=0, retry_backoff=0
    )


@pytest.fixture
def engine() -> ClusterEngine:
    return ClusterEngine(SklearnClusteringBackend(), ClusterParams())


@pytest.fixture
def hero_config(hero_dir) -> PipelineConfig:
    return default_pipeline_config().with_overrides(
        source_root=str(hero_dir), provider="mock"
    )


@dataclass
class MockStack:
    """Use cases wired to the offline providers"""
    pipeline: PipelineUseCases
    baseline: BaselineUseCases
    completion_provider: MockCompletionProvider


@pytest.fixture
def build_stack(prompts) -> Callable[[PipelineConfig], MockStack]:
    """Fresh in-memory cache and mock providers per call"""

    def build(config: PipelineConfig) -> MockStack:
        cache = MemoryResponseCache()
        provider = MockCompletionProvider()
        completion = CompletionGateway(provider, cache, max_retries=0, retry_backoff=0)
        embedding = EmbeddingGateway(
            MockEmbeddingProvider(), cache, max_retries=0, retry_backoff=0
        )
        engine = ClusterEngine(SklearnClusteringBackend(), config.cluster)
        summarizer = SummarizeUseCases(completion, prompts, config.summary_token_budget)
        generator = GenerationUseCases(completion, prompts, engine)
        pipeline = PipelineUseCases(
            config, summarizer, generator, engine, embedding, {"seed": config.seed}
        )
        baseline = BaselineUseCases(pipeline, generator, completion, prompts)
        return MockStack(pipeline, baseline, provider)

    return build
