"""
Artifact tree integrity checks

Violations are returned as data; nothing here raises.
"""
from collections import Counter
from typing import Dict, List

from ..entities.artifact import Artifact
from ..entities.artifact_tree import ArtifactTree


def validate_tree(tree: ArtifactTree) -> List[str]:
    """Return a description of every invariant violation in the tree"""
    violations: List[str] = []
    index: Dict[str, Artifact] = {}

    for position, layer in enumerate(tree.layers):
        if layer.index != position:
            violations.append(
                f"layer at position {position} has index {layer.index} "
                "(indices must be contiguous from 0)"
            )
        for artifact in layer.artifacts:
            if artifact.id in index:
                violations.append(f"duplicate artifact id {artifact.id}")
            else:
                index[artifact.id] = artifact
            violations.extend(_artifact_violations(artifact, layer.index))

    link_counts = Counter(link.key for link in tree.links)
    for (parent_id, child_id), count in sorted(link_counts.items()):
        if count > 1:
            violations.append(f"duplicate link {parent_id} -> {child_id}")

    for link in tree.links:
        parent = index.get(link.parent_id)
        child = index.get(link.child_id)
        arrow = f"{link.parent_id} -> {link.child_id}"
        if parent is None:
            violations.append(f"dangling parent {link.parent_id} in link {arrow}")
        if child is None:
            violations.append(f"dangling child {link.child_id} in link {arrow}")
        if (
            parent is not None
            and child is not None
            and parent.layer_index != child.layer_index + 1
        ):
            violations.append(
                f"non-adjacent layers in link {arrow} "
                f"({parent.layer_index} -> {child.layer_index})"
            )
        if not 0.0 <= link.score <= 1.0:
            violations.append(f"score {link.score} out of range in link {arrow}")

    return violations


def _artifact_violations(artifact: Artifact, layer_index: int) -> List[str]:
    problems = []
    if artifact.layer_index != layer_index:
        problems.append(
            f"artifact {artifact.id} has layer_index {artifact.layer_index} "
            f"inside layer {layer_index}"
        )
    if not artifact.body.strip():
        problems.append(f"artifact {artifact.id} has an empty body")
    if artifact.layer_index == 0 and not artifact.source_path:
        problems.append(f"artifact {artifact.id} in layer 0 has no source_path")
    if artifact.layer_index > 0 and artifact.source_path:
        problems.append(
            f"artifact {artifact.id} in layer {artifact.layer_index} has a source_path"
        )
    return problems
