"""
Ground-truth and concept annotation CSV readers
"""
import csv
import io
import logging
from typing import List, Set, Tuple

from ...domain.exceptions import EvaluationError
from ...domain.value_objects.evaluation import ConceptAnnotation, GroundTruth

logger = logging.getLogger(__name__)

VERDICTS = {"approved", "added", "declined"}


def _rows(text: str, required: Tuple[str, ...], origin: str) -> List[dict]:
    reader = csv.DictReader(io.StringIO(text))
    header = [name.strip() for name in (reader.fieldnames or [])]
    missing = [name for name in required if name not in header]
    if missing:
        raise EvaluationError(f"{origin}: missing column(s) {', '.join(missing)}")
    reader.fieldnames = header
    return list(reader)


def parse_ground_truth(text: str, origin: str = "truth") -> GroundTruth:
    """parent_id,child_id,verdict rows; declined rows are dropped"""
    approved: Set[Tuple[str, str]] = set()
    added: Set[Tuple[str, str]] = set()
    declined = 0
    rows = _rows(text, ("parent_id", "child_id", "verdict"), origin)
    for line, row in enumerate(rows, start=2):
        parent_id = (row.get("parent_id") or "").strip()
        child_id = (row.get("child_id") or "").strip()
        verdict = (row.get("verdict") or "").strip().lower()
        if not parent_id or not child_id:
            raise EvaluationError(
                f"{origin}:{line}: parent_id and child_id are required"
            )
        if verdict not in VERDICTS:
            raise EvaluationError(f"{origin}:{line}: unknown verdict '{verdict}'")
        if verdict == "approved":
            approved.add((parent_id, child_id))
        elif verdict == "added":
            added.add((parent_id, child_id))
        else:
            declined += 1
    logger.debug(
        f"{origin}: {len(approved)} approved, {len(added)} added, {declined} declined"
    )
    return GroundTruth(approved=frozenset(approved), added=frozenset(added))


def parse_concepts(text: str, origin: str = "concepts") -> List[ConceptAnnotation]:
    """concept,artifact_ids rows with semicolon-joined ids"""
    annotations: List[ConceptAnnotation] = []
    seen: Set[str] = set()
    rows = _rows(text, ("concept", "artifact_ids"), origin)
    for line, row in enumerate(rows, start=2):
        concept = (row.get("concept") or "").strip()
        if not concept:
            raise EvaluationError(f"{origin}:{line}: empty concept label")
        if concept in seen:
            raise EvaluationError(f"{origin}:{line}: duplicate concept '{concept}'")
        seen.add(concept)
        parts = (row.get("artifact_ids") or "").split(";")
        ids = frozenset(part.strip() for part in parts if part.strip())
        annotations.append(ConceptAnnotation(concept=concept, present_in_ids=ids))
    return annotations
