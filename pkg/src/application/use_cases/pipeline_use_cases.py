"""
Pipeline use cases

Stage 0 builds layer 0; every LayerSpec then runs clustering, generation,
duplicate refinement, intra-cluster linking and cross-duplicate handling
to produce the next layer and its links.
"""

import asyncio
import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from ...domain.entities.artifact import Artifact, Layer
from ...domain.entities.artifact_tree import ArtifactTree
from ...domain.entities.trace_link import TraceLink
from ...domain.exceptions import DoctraceError, PipelineError
from ...domain.services.n_targets import compute_n_targets, max_inverse_cohesion
from ...domain.services.similarity import SimilarityIndex
from ...domain.services.trace_links import (
    SimilarityMatrix,
    detect_cross_duplicates,
    ensure_no_orphans,
    link_intra_cluster,
    merge_duplicates,
    share_links,
)
from ...domain.services.validation import validate_tree
from ...domain.value_objects.embedding import Embedding
from ...domain.value_objects.params import LayerSpec
from ...infrastructure.config.pipeline_config import PipelineConfig
from ...infrastructure.logging import stage_timer
from ...infrastructure.sources import discover_sources
from ..dtos.generation_dto import (
    FlaggedPairRecord,
    GenerationRecord,
    LayerDiagnostics,
)
from ..interfaces.providers import EmbeddingService
from ..services.cluster_engine import ClusterEngine
from .generation_use_cases import GenerationUseCases
from .summarize_use_cases import SummarizeUseCases

logger = logging.getLogger(__name__)


@dataclass
class SourceGroup:
    """A cluster (or singleton) of lower-layer artifacts that feeds generation"""
    ref: str
    member_ids: List[str]
    cohesion: Optional[float]


@dataclass
class PipelineResult:
    tree: ArtifactTree
    diagnostics: List[LayerDiagnostics] = field(default_factory=list)


@contextmanager
def pipeline_stage(stage: str, cluster: Optional[str] = None) -> Iterator[None]:
    """Re-raise failures as PipelineError naming the stage"""
    try:
        yield
    except PipelineError:
        raise
    except (DoctraceError, ValueError) as e:
        raise PipelineError(stage, str(e), cluster) from e


def unique_artifacts(artifacts: Sequence[Artifact]) -> List[Artifact]:
    """Disambiguate colliding content ids by suffixing the title"""
    seen: Set[str] = set()
    result: List[Artifact] = []
    for artifact in artifacts:
        candidate = artifact
        copy = 2
        while candidate.id in seen:
            candidate = Artifact.create(
                layer_index=artifact.layer_index,
                artifact_type=artifact.artifact_type,
                title=f"{artifact.title} ({copy})",
                body=artifact.body,
                source_path=artifact.source_path,
                size=artifact.size,
            )
            copy += 1
        seen.add(candidate.id)
        result.append(candidate)
    return result


class PipelineUseCases:
    """Orchestrates one hierarchy or baseline run"""

    def __init__(
        self,
        config: PipelineConfig,
        summarizer: SummarizeUseCases,
        generator: GenerationUseCases,
        engine: ClusterEngine,
        embedding: EmbeddingService,
        provenance: Optional[Dict[str, object]] = None,
    ):
        self.config = config
        self._summarizer = summarizer
        self._generator = generator
        self._engine = engine
        self._embedding = embedding
        self._provenance = dict(provenance or {})

    async def embed_artifacts(
        self, artifacts: Sequence[Artifact]
    ) -> Dict[str, Embedding]:
        vectors = await self._embedding.embed([a.text() for a in artifacts])
        return {a.id: v for a, v in zip(artifacts, vectors)}

    async def build_code_layer(self) -> Layer:
        """Stage 0 over the configured source tree"""
        source = self.config.source
        with stage_timer("Stage 0 summarization", root=source.root):
            files = discover_sources(source.root, source.include, source.exclude)
            if not files:
                raise PipelineError(
                    "stage 0", f"no inputs: no source files under {source.root}"
                )
            return await self._summarizer.summarize_all(
                files, skip_failed=self.config.skip_failed_sources
            )

    async def run_layer(
        self, layer: Layer, spec: LayerSpec
    ) -> Tuple[Layer, List[TraceLink], LayerDiagnostics]:
        """Generate the layer above `layer` and link it down"""
        children = list(layer.artifacts)
        if not children:
            raise PipelineError("stage 1", f"no inputs for layer {layer.index + 1}")
        new_index = layer.index + 1
        child_ids = [a.id for a in children]
        by_id: Dict[str, Artifact] = {a.id: a for a in children}

        with pipeline_stage("stage 1"):
            with stage_timer(
                "Stage 1 clustering", layer=layer.index, artifacts=len(children)
            ):
                embeddings = await self.embed_artifacts(children)
                clustering, candidates = self._engine.run(
                    child_ids, embeddings, layer.index
                )
        groups = [
            SourceGroup(f"L{layer.index}-C{k}", list(c.member_ids), c.cohesion)
            for k, c in enumerate(clustering.clusters)
        ] + [
            SourceGroup(f"L{layer.index}-S{k}", [s], None)
            for k, s in enumerate(clustering.singletons)
        ]

        with pipeline_stage("stage 2"):
            template = await self._generator.generate_format(spec)
        with stage_timer("Stage 2 generation", layer=new_index, clusters=len(groups)):
            max_inverse = max_inverse_cohesion(g.cohesion for g in groups)
            mean_size = layer.mean_size()
            records, generated = await self._generate_groups(
                groups, by_id, template, spec, new_index, max_inverse, mean_size
            )

        index = SimilarityIndex(embeddings)
        parents, origin, sources_of, duplicate_groups = await self._refine(
            generated,
            records,
            groups,
            by_id,
            index,
            embeddings,
            template,
            spec,
            new_index,
            max_inverse,
            mean_size,
        )

        with pipeline_stage("stage 4"):
            with stage_timer("Stage 4 linking", layer=new_index, parents=len(parents)):
                parent_vectors = await self.embed_artifacts(parents)
                parent_ids = [p.id for p in parents]
                full = SimilarityIndex({**embeddings, **parent_vectors})
                similarity = SimilarityMatrix(
                    parent_ids, child_ids, full.matrix(parent_ids, child_ids)
                )
                links: Set[TraceLink] = set()
                scopes = self._link_scopes(parent_ids, origin, sources_of)
                for group_ref, members in scopes:
                    group_parents = [p for p in parent_ids if origin[p] == group_ref]
                    links |= link_intra_cluster(
                        members, group_parents, similarity, self.config.links
                    )
                link_counts = {"intra": len(links)}
                links = ensure_no_orphans(child_ids, links, similarity)
                link_counts["after_orphans"] = len(links)

        with pipeline_stage("stage 5"):
            with stage_timer("Stage 5 cross-duplicates", layer=new_index):
                pairwise = full.matrix(parent_ids, parent_ids)
                flagged = detect_cross_duplicates(
                    parent_ids, pairwise, self.config.links
                )
                for pair in flagged:
                    links = share_links(pair, links, similarity, self.config.links)
                link_counts["after_sharing"] = len(links)
                survivors, links = merge_duplicates(
                    flagged, parent_ids, links, similarity
                )

        dropped = set(parent_ids) - set(survivors)
        kept = [p for p in parents if p.id not in dropped]
        new_layer = Layer(
            index=new_index, artifact_type=spec.artifact_type, artifacts=kept
        )
        diagnostics = LayerDiagnostics(
            layer_index=new_index,
            artifact_type=spec.artifact_type,
            format_template=template,
            candidates=candidates,
            clusters=[list(c.member_ids) for c in clustering.clusters],
            singletons=list(clustering.singletons),
            generation_records=records,
            duplicate_groups=duplicate_groups,
            similarity_parents=parent_ids,
            similarity_children=child_ids,
            similarity=similarity.scores.round(6).tolist(),
            flagged=[
                FlaggedPairRecord(
                    first=a, second=b, score=score,
                    merged=next((x for x in (a, b) if x in dropped), None),
                )
                for a, b, score in flagged
            ],
            link_counts={**link_counts, "final": len(links)},
        )
        logger.info(
            f"Layer {new_index} ({spec.artifact_type}): {len(kept)} artifacts, "
            f"{len(links)} links, {len(flagged)} flagged pairs, "
            f"{len(dropped)} merged"
        )
        return new_layer, sorted(links, key=lambda link: link.key), diagnostics

    async def _generate_groups(
        self,
        groups: Sequence[SourceGroup],
        by_id: Dict[str, Artifact],
        template: str,
        spec: LayerSpec,
        new_index: int,
        max_inverse: Optional[float],
        mean_size: float,
    ) -> Tuple[List[GenerationRecord], List[Tuple[SourceGroup, List[Artifact]]]]:
        plans = []
        for group in groups:
            n, diversity, density = compute_n_targets(
                group.cohesion,
                [by_id[m].size for m in group.member_ids],
                mean_size,
                max_inverse,
                spec,
            )
            plans.append((group, n, diversity, density))

        async def generate(group: SourceGroup, n: int) -> List[Artifact]:
            with pipeline_stage("stage 2", group.ref):
                return await self._generator.generate_artifacts(
                    [by_id[m] for m in group.member_ids],
                    template,
                    n,
                    new_index,
                    spec.artifact_type,
                )

        outputs = await asyncio.gather(
            *(generate(group, n) for group, n, _, _ in plans)
        )
        records: List[GenerationRecord] = []
        generated: List[Tuple[SourceGroup, List[Artifact]]] = []
        for (group, n, diversity, density), artifacts in zip(plans, outputs):
            records.append(
                GenerationRecord(
                    cluster_ref=group.ref,
                    source_ids=group.member_ids,
                    generated_ids=[a.id for a in artifacts],
                    n_targets=n,
                    concept_diversity=diversity,
                    information_density=density,
                )
            )
            generated.append((group, artifacts))
        return records, generated

    async def _refine(
        self,
        generated: List[Tuple[SourceGroup, List[Artifact]]],
        records: List[GenerationRecord],
        groups: Sequence[SourceGroup],
        by_id: Dict[str, Artifact],
        index: SimilarityIndex,
        embeddings: Dict[str, Embedding],
        template: str,
        spec: LayerSpec,
        new_index: int,
        max_inverse: Optional[float],
        mean_size: float,
    ) -> Tuple[List[Artifact], Dict[str, str], Dict[str, List[str]], List[List[str]]]:
        """Stage 3: one pass of duplicate detection and regeneration"""
        parents: List[Artifact] = unique_artifacts(
            [a for _, artifacts in generated for a in artifacts]
        )
        origin: Dict[str, str] = {}
        sources_of: Dict[str, List[str]] = {}
        position = 0
        for group, artifacts in generated:
            for _ in artifacts:
                origin[parents[position].id] = group.ref
                sources_of[parents[position].id] = list(group.member_ids)
                position += 1

        with pipeline_stage("stage 3"), stage_timer(
            "Stage 3 refinement", layer=new_index
        ):
            parent_vectors = await self.embed_artifacts(parents)
            duplicate_groups = self._generator.find_duplicate_clusters(
                [p.id for p in parents], parent_vectors, origin, new_index
            )
            if not duplicate_groups:
                return parents, origin, sources_of, []

            trace_index = SimilarityIndex({**embeddings, **parent_vectors})
            by_parent = {p.id: p for p in parents}
            for k, group_ids in enumerate(duplicate_groups):
                ref = f"L{new_index - 1}-R{k}"
                fresh = self._generator.trace_duplicate_sources(
                    group_ids, sources_of, trace_index
                )
                cohesion = self._generator.fresh_cohesion(index, fresh)
                n, diversity, density = compute_n_targets(
                    cohesion,
                    [by_id[m].size for m in fresh],
                    mean_size,
                    max_inverse,
                    spec,
                )
                n = max(1, min(n, len(group_ids)))
                with pipeline_stage("stage 3", ref):
                    replacements = await self._generator.generate_artifacts(
                        [by_id[m] for m in fresh],
                        template,
                        n,
                        new_index,
                        spec.artifact_type,
                        duplicates=[by_parent[g] for g in group_ids],
                    )
                insert_at = min(i for i, p in enumerate(parents) if p.id in group_ids)
                remaining = [p for p in parents if p.id not in group_ids]
                replacements = unique_artifacts([*remaining, *replacements])[
                    len(remaining) :
                ]
                kept_before = sum(
                    1 for p in parents[:insert_at] if p.id not in group_ids
                )
                parents = (
                    remaining[:kept_before] + replacements + remaining[kept_before:]
                )
                for record in records:
                    hit = [g for g in record.generated_ids if g in group_ids]
                    if hit:
                        record.replaced_ids.extend(hit)
                for gid in group_ids:
                    origin.pop(gid, None)
                    sources_of.pop(gid, None)
                for r in replacements:
                    origin[r.id] = ref
                    sources_of[r.id] = list(fresh)
                records.append(
                    GenerationRecord(
                        cluster_ref=ref,
                        source_ids=fresh,
                        generated_ids=[r.id for r in replacements],
                        n_targets=n,
                        concept_diversity=diversity,
                        information_density=density,
                        regenerated=True,
                    )
                )
                logger.info(
                    f"Regenerated {len(group_ids)} overlapping artifacts "
                    f"as {len(replacements)} ({ref})"
                )
        return parents, origin, sources_of, duplicate_groups

    @staticmethod
    def _link_scopes(
        parent_ids: Sequence[str],
        origin: Dict[str, str],
        sources_of: Dict[str, List[str]],
    ) -> List[Tuple[str, List[str]]]:
        """(source group ref, its children) in first-parent order"""
        scopes: List[Tuple[str, List[str]]] = []
        seen: Set[str] = set()
        for parent_id in parent_ids:
            ref = origin[parent_id]
            if ref not in seen:
                seen.add(ref)
                scopes.append((ref, sources_of[parent_id]))
        return scopes

    async def run_pipeline(self) -> PipelineResult:
        """Full hierarchy: layer 0 plus every configured layer"""
        code_layer = await self.build_code_layer()
        tree = ArtifactTree(project_name=self.config.project_name, layers=[code_layer])
        diagnostics: List[LayerDiagnostics] = []
        current = code_layer
        for spec in self.config.layers:
            with stage_timer("Layer", index=current.index + 1, type=spec.artifact_type):
                current, links, layer_diagnostics = await self.run_layer(current, spec)
            tree = tree.with_layer(current, links)
            diagnostics.append(layer_diagnostics)
        return PipelineResult(
            tree=self.finalize(tree, "hierarchy"), diagnostics=diagnostics
        )

    def finalize(self, tree: ArtifactTree, mode: str) -> ArtifactTree:
        tree = tree.with_provenance(mode=mode, **self._provenance)
        violations = validate_tree(tree)
        if violations:
            raise PipelineError(
                "assembly", f"tree failed validation: {'; '.join(violations[:5])}"
            )
        return tree
