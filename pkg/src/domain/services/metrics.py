"""
Traceability and coverage metrics

Undefined ratios (zero denominators) come back as None.
"""
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from ..entities.artifact_tree import ArtifactTree
from ..entities.trace_link import TraceLink
from ..value_objects.evaluation import ConceptAnnotation, LinkKey


def precision_recall(
    predicted: Iterable[LinkKey], truth: Iterable[LinkKey]
) -> Tuple[Optional[float], Optional[float]]:
    """Set precision and recall of predicted links"""
    predicted_set = set(predicted)
    truth_set = set(truth)
    hits = len(predicted_set & truth_set)
    precision = hits / len(predicted_set) if predicted_set else None
    recall = hits / len(truth_set) if truth_set else None
    return precision, recall


def rank_by_parent(links: Iterable[TraceLink]) -> Dict[str, List[str]]:
    """Per-parent child lists ordered by score descending, ties by child id"""
    grouped: Dict[str, List[TraceLink]] = {}
    for link in links:
        grouped.setdefault(link.parent_id, []).append(link)
    return {
        parent: [
            link.child_id
            for link in sorted(items, key=lambda item: (-item.score, item.child_id))
        ]
        for parent, items in sorted(grouped.items())
    }


def average_precision(ranked_children: Sequence[str], relevant: Set[str]) -> float:
    """Mean of hits-so-far / rank taken at each correct rank"""
    hits = 0
    precisions = []
    for rank, child_id in enumerate(ranked_children, start=1):
        if child_id in relevant:
            hits += 1
            precisions.append(hits / rank)
    return sum(precisions) / len(precisions) if precisions else 0.0


def mean_average_precision(
    ranked: Mapping[str, Sequence[str]], truth: Iterable[LinkKey]
) -> Optional[float]:
    """Mean AP over parents with at least one true link"""
    relevant: Dict[str, Set[str]] = {}
    for parent_id, child_id in truth:
        relevant.setdefault(parent_id, set()).add(child_id)
    if not relevant:
        return None
    scores = [
        average_precision(ranked.get(parent_id, []), children)
        for parent_id, children in sorted(relevant.items())
    ]
    return sum(scores) / len(scores)


def count_orphans(tree: ArtifactTree, layer_index: int) -> int:
    """Artifacts in the layer with no parent link"""
    layer = tree.layer(layer_index)
    if layer is None:
        return 0
    parented = tree.parented_ids()
    return sum(1 for artifact in layer.artifacts if artifact.id not in parented)


def concept_coverage(
    annotations: Sequence[ConceptAnnotation], generated_count: int
) -> Tuple[Optional[float], Optional[float]]:
    """(share of concepts covered, share of generated artifacts covering one)"""
    if not annotations:
        return None, None
    covered = sum(1 for annotation in annotations if annotation.covered)
    coverage = covered / len(annotations)
    if generated_count <= 0:
        return coverage, None
    covering: Set[str] = set()
    for annotation in annotations:
        covering.update(annotation.present_in_ids)
    return coverage, min(1.0, len(covering) / generated_count)
