"""
Evaluation use cases

Traceability accuracy against expert ground truth, orphan counts and
concept coverage of a generated tree.
"""

import logging
from typing import Iterable, List, Optional, Sequence

from ...domain.entities.artifact_tree import ArtifactTree
from ...domain.exceptions import EvaluationError
from ...domain.services.metrics import (
    concept_coverage,
    count_orphans,
    mean_average_precision,
    precision_recall,
    rank_by_parent,
)
from ...domain.value_objects.evaluation import ConceptAnnotation, GroundTruth
from ..dtos.evaluation_dto import EvalReport

logger = logging.getLogger(__name__)


def _check_known(ids: Iterable[str], tree: ArtifactTree, what: str) -> None:
    known = tree.artifact_index()
    unknown = sorted(set(ids) - set(known))
    if unknown:
        more = f" (and {len(unknown) - 1} more)" if len(unknown) > 1 else ""
        raise EvaluationError(
            f"{what} references unknown artifact id {unknown[0]}{more}"
        )


class EvaluationUseCases:
    """Pure evaluation over a loaded tree"""

    def evaluate(
        self,
        tree: ArtifactTree,
        truth: Optional[GroundTruth] = None,
        concepts: Optional[Sequence[ConceptAnnotation]] = None,
        layer_index: Optional[int] = None,
    ) -> EvalReport:
        if not tree.layers:
            raise EvaluationError("Tree has no layers")
        report = EvalReport()

        orphans = {
            layer.index: count_orphans(tree, layer.index)
            for layer in tree.layers[:-1]
        }
        report.orphans_by_layer = orphans
        report.orphan_count = sum(orphans.values())
        report.predicted_links = len(tree.links)

        if truth is not None:
            _check_known(truth.artifact_ids(), tree, "Ground truth")
            predicted = [link.key for link in tree.links]
            report.precision, report.recall = precision_recall(predicted, truth.links)
            report.mean_average_precision = mean_average_precision(
                rank_by_parent(tree.links), truth.links
            )
            report.truth_links = len(truth.links)

        if concepts is not None:
            annotated = (i for c in concepts for i in c.present_in_ids)
            _check_known(annotated, tree, "Concept annotations")
            target = tree.top if layer_index is None else tree.layer(layer_index)
            if target is None:
                raise EvaluationError(f"Tree has no layer {layer_index}")
            layer_ids = set(target.ids())
            in_layer: List[ConceptAnnotation] = [
                ConceptAnnotation(
                    concept=c.concept, present_in_ids=c.present_in_ids & layer_ids
                )
                for c in concepts
            ]
            report.coverage_pct, _ = concept_coverage(concepts, len(target))
            _, report.covered_by_pct = concept_coverage(in_layer, len(target))
            report.covered_by_layer = target.index

        logger.info(
            f"Evaluation: precision={report.precision} recall={report.recall} "
            f"mAP={report.mean_average_precision} orphans={report.orphan_count}"
        )
        return report
