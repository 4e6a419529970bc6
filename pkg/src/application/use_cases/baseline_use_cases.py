"""
Baseline generator

No clustering or refinement: each layer is generated in bulk from batches
of the layer below, and links come from a fixed cutoff on min-max
normalized cosine scores. Orphans are allowed.
"""

import logging
from typing import List, Sequence, Set

from ...domain.entities.artifact import Artifact, Layer
from ...domain.entities.artifact_tree import ArtifactTree
from ...domain.entities.trace_link import TraceLink
from ...domain.services.metrics import count_orphans
from ...domain.services.similarity import SimilarityIndex
from ...domain.services.trace_links import normalize_scores
from ...domain.value_objects.params import LayerSpec, Normalization
from ...infrastructure.logging import stage_timer
from ...infrastructure.prompts import PromptLibrary
from ...infrastructure.sources import estimate_tokens
from ..interfaces.providers import CompletionService
from .generation_use_cases import GenerationUseCases, parse_items, render_sources
from .pipeline_use_cases import (
    PipelineResult,
    PipelineUseCases,
    pipeline_stage,
    unique_artifacts,
)

logger = logging.getLogger(__name__)


def batch_artifacts(
    artifacts: Sequence[Artifact], token_budget: int
) -> List[List[Artifact]]:
    """Consecutive batches whose rendered text fits the budget; never empty"""
    batches: List[List[Artifact]] = []
    current: List[Artifact] = []
    for artifact in artifacts:
        rendered = render_sources([*current, artifact])
        if current and estimate_tokens(rendered) > token_budget:
            batches.append(current)
            current = []
        current.append(artifact)
    if current:
        batches.append(current)
    return batches


def cutoff_links(
    parent_ids: Sequence[str],
    child_ids: Sequence[str],
    index: SimilarityIndex,
    cutoff: float,
) -> Set[TraceLink]:
    """Link pairs whose min-max normalized cosine reaches the cutoff"""
    raw = index.matrix(parent_ids, child_ids)
    if raw.size == 0:
        return set()
    normalized = normalize_scores(raw, Normalization.MINMAX)
    return {
        TraceLink.create(parent_id, child_id, raw[i, j])
        for i, parent_id in enumerate(parent_ids)
        for j, child_id in enumerate(child_ids)
        if normalized[i, j] >= cutoff
    }


class BaselineUseCases:
    """Comparison generator sharing Stage 0 with the hierarchy pipeline"""

    def __init__(
        self,
        pipeline: PipelineUseCases,
        generator: GenerationUseCases,
        completion: CompletionService,
        prompts: PromptLibrary,
        max_tokens: int = 4096,
    ):
        self._pipeline = pipeline
        self._generator = generator
        self._completion = completion
        self._prompts = prompts
        self._max_tokens = max_tokens

    async def generate_layer(self, layer: Layer, spec: LayerSpec) -> Layer:
        new_index = layer.index + 1
        config = self._pipeline.config
        with pipeline_stage("baseline generation"):
            template = await self._generator.generate_format(spec)
            artifacts: List[Artifact] = []
            batches = batch_artifacts(layer.artifacts, config.baseline_batch_tokens)
            for number, batch in enumerate(batches, start=1):
                request = self._prompts.get("baseline").render(
                    max_tokens=self._max_tokens,
                    artifact_type=spec.artifact_type,
                    template=template,
                    sources=render_sources(batch),
                )
                reply = await self._completion.complete(request)
                items = parse_items(reply) or [
                    (f"{spec.artifact_type} {number}", reply.strip())
                ]
                artifacts.extend(
                    Artifact.create(
                        layer_index=new_index,
                        artifact_type=spec.artifact_type,
                        title=t,
                        body=b,
                    )
                    for t, b in items
                )
        logger.info(
            f"Baseline layer {new_index}: {len(artifacts)} artifacts "
            f"from {len(batches)} batches"
        )
        return Layer(
            index=new_index,
            artifact_type=spec.artifact_type,
            artifacts=unique_artifacts(artifacts),
        )

    async def run_baseline(self) -> PipelineResult:
        """Stage 0, then bulk generation and cutoff linking per layer"""
        config = self._pipeline.config
        code_layer = await self._pipeline.build_code_layer()
        tree = ArtifactTree(project_name=config.project_name, layers=[code_layer])
        current = code_layer
        for spec in config.layers:
            with stage_timer(
                "Baseline layer", index=current.index + 1, type=spec.artifact_type
            ):
                upper = await self.generate_layer(current, spec)
                with pipeline_stage("baseline linking"):
                    vectors = await self._pipeline.embed_artifacts(
                        [*current.artifacts, *upper.artifacts]
                    )
                    links = cutoff_links(
                        upper.ids(),
                        current.ids(),
                        SimilarityIndex(vectors),
                        config.baseline_cutoff,
                    )
            tree = tree.with_layer(upper, links)
            logger.info(
                f"Baseline layer {upper.index}: {len(links)} links, "
                f"{count_orphans(tree, current.index)} orphans below"
            )
            current = upper
        return PipelineResult(tree=self._pipeline.finalize(tree, "baseline"))
