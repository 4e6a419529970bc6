"""
Source discovery and chunking for code summarization
"""
import logging
import math
from fnmatch import fnmatchcase
from pathlib import Path
from typing import List, Sequence

from ...domain.exceptions import ArgumentError, SourceError
from ...domain.value_objects.common import line_count
from ...domain.value_objects.source import SourceFile

logger = logging.getLogger(__name__)

BINARY_SNIFF_BYTES = 8192
CHARS_PER_TOKEN = 4


def estimate_tokens(text: str) -> int:
    return math.ceil(len(text) / CHARS_PER_TOKEN)


def matches(relative_path: str, patterns: Sequence[str]) -> bool:
    """Glob match where a leading '**/' also matches at the root"""
    for pattern in patterns:
        if fnmatchcase(relative_path, pattern):
            return True
        if pattern.startswith("**/") and fnmatchcase(relative_path, pattern[3:]):
            return True
    return False


def _is_binary(raw: bytes) -> bool:
    return b"\x00" in raw[:BINARY_SNIFF_BYTES]


def discover_sources(
    root: str, include: Sequence[str] = ("**/*",), exclude: Sequence[str] = ()
) -> List[SourceFile]:
    """Readable text files under root, ordered by relative path"""
    root_path = Path(root)
    if not root_path.is_dir():
        raise SourceError(f"Source root {root} does not exist or is not a directory")
    try:
        candidates = sorted(p for p in root_path.rglob("*") if p.is_file())
    except OSError as e:
        raise SourceError(f"Cannot read source root {root}: {e}") from e

    sources: List[SourceFile] = []
    for path in candidates:
        relative = path.relative_to(root_path).as_posix()
        if not matches(relative, include) or matches(relative, exclude):
            continue
        try:
            raw = path.read_bytes()
        except OSError as e:
            logger.warning(f"Skipping unreadable file {relative}: {e}")
            continue
        if _is_binary(raw):
            logger.debug(f"Skipping binary file {relative}")
            continue
        content = raw.decode("utf-8", errors="replace")
        sources.append(
            SourceFile(
                path=relative,
                language=SourceFile.language_for(relative),
                content=content,
                loc=line_count(content),
            )
        )

    sources.sort(key=lambda s: s.path)
    logger.info(f"Discovered {len(sources)} source files under {root}")
    return sources


def chunk_source(source: SourceFile, budget: int) -> List[str]:
    """Split content at line boundaries into chunks of at most budget tokens"""
    if budget <= 0:
        raise ArgumentError("Chunk budget must be positive")
    if estimate_tokens(source.content) <= budget:
        return [source.content]

    chunks: List[str] = []
    current: List[str] = []
    current_chars = 0
    for line in source.content.splitlines(keepends=True):
        projected = math.ceil((current_chars + len(line)) / CHARS_PER_TOKEN)
        if current and projected > budget:
            chunks.append("".join(current))
            current, current_chars = [], 0
        current.append(line)
        current_chars += len(line)
    if current:
        chunks.append("".join(current))
    return chunks
