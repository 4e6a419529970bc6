"""
Trace link recovery between a generated layer and the layer below it
"""
import logging
from typing import Dict, List, Sequence, Set, Tuple

import numpy as np

from ..entities.trace_link import TraceLink
from ..exceptions import ArgumentError
from ..value_objects.params import LinkParams, Normalization

logger = logging.getLogger(__name__)

_EPS = 1e-12
FlaggedPair = Tuple[str, str, float]


class SimilarityMatrix:
    """Dense parent x child cosine scores"""

    def __init__(
        self, parent_ids: Sequence[str], child_ids: Sequence[str], scores: np.ndarray
    ):
        scores = np.asarray(scores, dtype=float)
        if scores.shape != (len(parent_ids), len(child_ids)):
            raise ArgumentError(
                f"Score shape {scores.shape} does not match "
                f"{len(parent_ids)}x{len(child_ids)}"
            )
        if not np.all(np.isfinite(scores)):
            raise ArgumentError("Similarity matrix contains non-finite scores")
        self.parent_ids = list(parent_ids)
        self.child_ids = list(child_ids)
        self.scores = scores
        self._parents = {p: i for i, p in enumerate(self.parent_ids)}
        self._children = {c: j for j, c in enumerate(self.child_ids)}

    def score(self, parent_id: str, child_id: str) -> float:
        return float(self.scores[self._parents[parent_id], self._children[child_id]])

    def sub(self, parent_ids: Sequence[str], child_ids: Sequence[str]) -> np.ndarray:
        rows = [self._parents[p] for p in parent_ids]
        cols = [self._children[c] for c in child_ids]
        return self.scores[np.ix_(rows, cols)]

    def to_rows(self) -> List[List[str]]:
        """CSV-ready rows with a header"""
        rows = [["parent", *self.child_ids]]
        for parent_id, values in zip(self.parent_ids, self.scores):
            rows.append([parent_id, *(f"{v:.6f}" for v in values)])
        return rows


def normalize_scores(
    scores: np.ndarray, normalization: Normalization = Normalization.MINMAX
) -> np.ndarray:
    """Scale a cluster's scores so the highest becomes 1"""
    if scores.size == 0:
        return scores
    high = float(scores.max())
    if normalization == Normalization.RAW_MAX:
        if high <= 0:
            return np.ones_like(scores)
        return scores / high
    low = float(scores.min())
    if high == low:
        return np.ones_like(scores)
    return (scores - low) / (high - low)


def link_intra_cluster(
    child_ids: Sequence[str],
    parent_ids: Sequence[str],
    similarity: SimilarityMatrix,
    params: LinkParams,
) -> Set[TraceLink]:
    """Link a cluster's pairs within sigma_window std of the top normalized score"""
    if not parent_ids or not child_ids:
        return set()
    raw = similarity.sub(parent_ids, child_ids)
    if raw.size == 1:
        return {TraceLink.create(parent_ids[0], child_ids[0], raw[0, 0])}
    normalized = normalize_scores(raw, params.normalization)
    threshold = 1.0 - params.sigma_window * float(np.std(normalized))
    links = set()
    for i, parent_id in enumerate(parent_ids):
        for j, child_id in enumerate(child_ids):
            if normalized[i, j] >= threshold - _EPS:
                links.add(TraceLink.create(parent_id, child_id, raw[i, j]))
    return links


def ensure_no_orphans(
    child_ids: Sequence[str],
    links: Set[TraceLink],
    similarity: SimilarityMatrix,
) -> Set[TraceLink]:
    """Give every unlinked child a link to its most similar parent in the whole layer"""
    if not similarity.parent_ids:
        raise ArgumentError("Cannot place children: the new layer is empty")
    linked = {link.child_id for link in links}
    augmented = set(links)
    for child_id in child_ids:
        if child_id in linked:
            continue
        column = similarity.sub(similarity.parent_ids, [child_id])[:, 0]
        best = int(np.argmax(column))
        parent_id = similarity.parent_ids[best]
        logger.debug(f"Orphan {child_id} linked to best parent {parent_id}")
        augmented.add(TraceLink.create(parent_id, child_id, column[best]))
    return augmented


def detect_cross_duplicates(
    artifact_ids: Sequence[str],
    pairwise: np.ndarray,
    params: LinkParams,
) -> List[FlaggedPair]:
    """Flag pairs scoring more than duplicate_sigma std above the layer mean"""
    n = len(artifact_ids)
    if n < 3:
        return []
    rows, cols = np.triu_indices(n, k=1)
    scores = pairwise[rows, cols]
    cutoff = float(scores.mean()) + params.duplicate_sigma * float(scores.std())
    flagged = [
        (artifact_ids[i], artifact_ids[j], float(s))
        for i, j, s in zip(rows, cols, scores)
        if s > cutoff + _EPS
    ]
    return sorted(flagged, key=lambda pair: (-pair[2], pair[0], pair[1]))


def _children_by_parent(links: Set[TraceLink]) -> Dict[str, Set[str]]:
    children: Dict[str, Set[str]] = {}
    for link in links:
        children.setdefault(link.parent_id, set()).add(link.child_id)
    return children


def share_links(
    pair: FlaggedPair,
    links: Set[TraceLink],
    similarity: SimilarityMatrix,
    params: LinkParams,
) -> Set[TraceLink]:
    """Copy links between a flagged pair when both score the child alike"""
    a, b, _ = pair
    children = _children_by_parent(links)
    augmented = set(links)
    existing = {link.key for link in links}
    for source, target in ((b, a), (a, b)):
        for child_id in sorted(children.get(source, set())):
            if (target, child_id) in existing:
                continue
            score = similarity.score(target, child_id)
            delta = abs(score - similarity.score(source, child_id))
            if delta <= params.share_tolerance + _EPS:
                augmented.add(TraceLink.create(target, child_id, score))
                existing.add((target, child_id))
    return augmented


def merge_duplicates(
    flagged: Sequence[FlaggedPair],
    parent_ids: Sequence[str],
    links: Set[TraceLink],
    similarity: SimilarityMatrix,
) -> Tuple[List[str], Set[TraceLink]]:
    """Drop one member of each flagged pair whose child sets are identical"""
    survivors = list(parent_ids)
    alive = set(parent_ids)
    current = set(links)
    for a, b, _ in flagged:
        if a not in alive or b not in alive:
            continue
        children = _children_by_parent(current)
        kids_a = children.get(a, set())
        kids_b = children.get(b, set())
        if kids_a != kids_b:
            continue
        dropped = _weaker_of(a, b, kids_a, similarity)
        logger.info(f"Merging duplicate {dropped} into {b if dropped == a else a}")
        alive.discard(dropped)
        survivors.remove(dropped)
        current = {link for link in current if link.parent_id != dropped}
    return survivors, current


def _weaker_of(a: str, b: str, children: Set[str], similarity: SimilarityMatrix) -> str:
    if not children:
        return max(a, b)
    kids = sorted(children)
    mean_a = float(np.mean([similarity.score(a, c) for c in kids]))
    mean_b = float(np.mean([similarity.score(b, c) for c in kids]))
    if abs(mean_a - mean_b) <= _EPS:
        return max(a, b)
    return b if mean_a > mean_b else a
