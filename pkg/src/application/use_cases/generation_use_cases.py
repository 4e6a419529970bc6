"""
Document generation use cases

Format templating, per-cluster artifact generation and the duplicate
refinement pass over a freshly generated layer.
"""

import logging
import re
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ...domain.entities.artifact import Artifact
from ...domain.exceptions import ArgumentError, GenerationError
from ...domain.services.cluster_scoring import cluster_cohesion
from ...domain.services.similarity import SimilarityIndex
from ...domain.value_objects.embedding import Embedding
from ...domain.value_objects.params import LayerSpec
from ...infrastructure.prompts import PromptLibrary
from ..interfaces.providers import CompletionService
from ..services.cluster_engine import ClusterEngine

logger = logging.getLogger(__name__)

ParsedItem = Tuple[str, str]

_ITEM_START = re.compile(r"^\s*(?:[-*]\s*)?\**\s*(\d+)\s*[.)]\s*(.*)$")
_TITLE_PREFIX = re.compile(r"^\**\s*title\s*\**\s*:\s*\**\s*", re.IGNORECASE)
_BODY_PREFIX = re.compile(
    r"^\**\s*(?:body|description)\s*\**\s*:\s*\**\s*", re.IGNORECASE
)

DUPLICATE_COHESION_PERCENTILE = 75.0
SOURCE_TRACE_TOLERANCE = 0.1


def parse_items(text: str) -> List[ParsedItem]:
    """Parse the numbered-list reply into (title, body) pairs

    Items without a body are dropped.
    """
    blocks: List[List[str]] = []
    for line in text.splitlines():
        match = _ITEM_START.match(line)
        if match:
            blocks.append([match.group(2)])
        elif blocks:
            blocks[-1].append(line)

    items: List[ParsedItem] = []
    for block in blocks:
        title = _TITLE_PREFIX.sub("", block[0]).strip().strip("*").strip()
        body_lines = [line.strip() for line in block[1:] if line.strip()]
        if body_lines:
            body_lines[0] = _BODY_PREFIX.sub("", body_lines[0]).strip()
        body = "\n".join(line for line in body_lines if line)
        if title and body:
            items.append((title, body))
    return items


def render_sources(sources: Sequence[Artifact]) -> str:
    return "\n\n".join(
        f"[{position}] {a.title}\n{a.body}"
        for position, a in enumerate(sources, start=1)
    )


class GenerationUseCases:
    """Stages 2 and 3"""

    def __init__(
        self,
        completion: CompletionService,
        prompts: PromptLibrary,
        engine: ClusterEngine,
        max_tokens: int = 2048,
    ):
        self._completion = completion
        self._prompts = prompts
        self._engine = engine
        self._max_tokens = max_tokens
        self._formats: Dict[str, str] = {}

    async def generate_format(self, spec: LayerSpec) -> str:
        """Format template for the layer's artifact type, generated once per type"""
        if spec.format_template:
            return spec.format_template
        return await self.format_for(spec.artifact_type)

    async def format_for(self, artifact_type: str) -> str:
        artifact_type = artifact_type.strip()
        if not artifact_type:
            raise ArgumentError("Artifact type must not be empty")
        if artifact_type not in self._formats:
            request = self._prompts.get("format").render(
                artifact_type=artifact_type, max_tokens=256
            )
            reply = await self._completion.complete(request)
            self._formats[artifact_type] = reply.strip()
            logger.info(
                f"Format for '{artifact_type}': {self._formats[artifact_type][:80]}"
            )
        return self._formats[artifact_type]

    async def generate_artifacts(
        self,
        sources: Sequence[Artifact],
        template: str,
        n_targets: int,
        layer_index: int,
        artifact_type: str,
        duplicates: Optional[Sequence[Artifact]] = None,
    ) -> List[Artifact]:
        """Exactly n_targets artifacts from one reply, with one corrective retry"""
        values = {
            "artifact_type": artifact_type,
            "template": template,
            "n_targets": n_targets,
            "sources": render_sources(sources),
        }
        prompt = "generate"
        if duplicates:
            prompt = "regenerate"
            values["duplicates"] = "\n".join(
                f"- {a.title}: {a.body}" for a in duplicates
            )

        reply = await self._completion.complete(
            self._prompts.get(prompt).render(max_tokens=self._max_tokens, **values)
        )
        items = parse_items(reply)
        if len(items) != n_targets:
            logger.warning(
                f"Expected {n_targets} {artifact_type} items, "
                f"got {len(items)}; retrying once"
            )
            retry = self._prompts.get("generate_retry").render(
                max_tokens=self._max_tokens, got=len(items), **values
            )
            items = parse_items(await self._completion.complete(retry))
        if len(items) < n_targets:
            raise GenerationError(
                f"Provider returned {len(items)} {artifact_type} items, "
                f"{n_targets} required"
            )
        if len(items) > n_targets:
            logger.warning(
                f"Truncating {len(items)} {artifact_type} items to {n_targets}"
            )
        return [
            Artifact.create(
                layer_index=layer_index,
                artifact_type=artifact_type,
                title=title,
                body=body,
            )
            for title, body in items[:n_targets]
        ]

    def find_duplicate_clusters(
        self,
        generated_ids: Sequence[str],
        embeddings: Mapping[str, Embedding],
        origin: Mapping[str, str],
        layer_index: int = 0,
    ) -> List[List[str]]:
        """Highly cohesive generated groups drawn from different source clusters"""
        if len(generated_ids) < 2:
            return []
        clustering = self._engine.cluster_layer(generated_ids, embeddings, layer_index)
        scored = [c for c in clustering.clusters if c.cohesion is not None]
        if not scored:
            return []
        threshold = float(
            np.percentile([c.cohesion for c in scored], DUPLICATE_COHESION_PERCENTILE)
        )
        groups = []
        for cluster in scored:
            if cluster.cohesion < threshold - 1e-12:
                continue
            if len({origin[m] for m in cluster.member_ids}) >= 2:
                groups.append(sorted(cluster.member_ids, key=list(generated_ids).index))
        return groups

    @staticmethod
    def trace_duplicate_sources(
        group: Sequence[str],
        sources_of: Mapping[str, Sequence[str]],
        index: SimilarityIndex,
        tolerance: float = SOURCE_TRACE_TOLERANCE,
    ) -> List[str]:
        """Union of each member's closest sources (within tolerance of its best)"""
        fresh: List[str] = []
        for generated_id in group:
            candidates = list(sources_of[generated_id])
            scores = index.matrix([generated_id], candidates)[0]
            best = float(scores.max())
            for source_id, score in zip(candidates, scores):
                if score >= best - tolerance - 1e-12 and source_id not in fresh:
                    fresh.append(source_id)
        return fresh

    @staticmethod
    def fresh_cohesion(
        index: SimilarityIndex, member_ids: Sequence[str]
    ) -> Optional[float]:
        if len(member_ids) < 2:
            return None
        return cluster_cohesion(index, member_ids)
