"""
Per-layer debug dumps
"""
import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, List

from ...application.dtos import LayerDiagnostics
from .tree_repository import write_atomic

logger = logging.getLogger(__name__)


def similarity_csv(diagnostics: LayerDiagnostics) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["parent", *diagnostics.similarity_children])
    for parent_id, row in zip(diagnostics.similarity_parents, diagnostics.similarity):
        writer.writerow([parent_id, *(f"{value:.6f}" for value in row)])
    return buffer.getvalue()


def _dump(value: Any) -> str:
    return json.dumps(value, sort_keys=True, indent=2, ensure_ascii=False)


def write_layer_diagnostics(
    debug_dir: str, diagnostics: LayerDiagnostics
) -> List[Path]:
    """Write candidates JSON, similarity CSV and flagged-pair JSON for one layer"""
    root = Path(debug_dir)
    prefix = f"layer-{diagnostics.layer_index}"
    candidates = {
        "layer_index": diagnostics.layer_index,
        "artifact_type": diagnostics.artifact_type,
        "format_template": diagnostics.format_template,
        "candidates": [c.model_dump(mode="json") for c in diagnostics.candidates],
        "clusters": diagnostics.clusters,
        "singletons": diagnostics.singletons,
        "generation_records": [
            r.model_dump(mode="json") for r in diagnostics.generation_records
        ],
        "duplicate_groups": diagnostics.duplicate_groups,
    }
    flagged = [f.model_dump(mode="json") for f in diagnostics.flagged]
    outputs = {
        root / f"{prefix}-candidates.json": _dump(candidates),
        root / f"{prefix}-similarity.csv": similarity_csv(diagnostics),
        root / f"{prefix}-flagged.json": _dump(flagged),
    }
    for path, text in outputs.items():
        write_atomic(str(path), text.encode("utf-8"))
    logger.debug(f"Wrote debug dumps for layer {diagnostics.layer_index} to {root}")
    return list(outputs)
