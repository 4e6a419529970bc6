import hashlib
import json
import re
from typing import Any, Optional

ID_LENGTH = 16
_WORD_RE = re.compile(r"\S+")


def content_id(
    layer_index: int,
    artifact_type: str,
    title: str,
    body: str,
    source_path: Optional[str] = None,
) -> str:
    """Derive a stable artifact id from its content

    Code artifacts also hash their source path: equal files in different
    directories stay distinct.
    """
    parts = [str(layer_index), artifact_type, title, body]
    if source_path:
        parts.append(source_path)
    payload = "\x1f".join(parts)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:ID_LENGTH]


def digest(data: Any) -> str:
    """Hex sha256 over the canonical JSON form of data"""
    if isinstance(data, str):
        raw = data
    else:
        raw = json.dumps(
            data, sort_keys=True, ensure_ascii=False, separators=(",", ":")
        )
    return hashlib.sha256(raw.encode("utf-8")).hexdigest()


def word_count(text: str) -> int:
    """Count whitespace-separated words"""
    return len(_WORD_RE.findall(text))


def line_count(text: str) -> int:
    """Count lines; a trailing newline does not open a new line"""
    if not text:
        return 0
    return text.count("\n") + (0 if text.endswith("\n") else 1)
