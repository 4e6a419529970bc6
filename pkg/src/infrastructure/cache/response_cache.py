"""
JSON-lines response cache

One record per line: {"key": <digest>, "value": <json>}. The file is
append-only; later records for the same key win on load.
"""

import asyncio
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from ...domain.repositories.response_cache import ResponseCache

logger = logging.getLogger(__name__)

CACHE_FILE_NAME = "responses.jsonl"


class JsonlResponseCache(ResponseCache):
    """Content-addressed on-disk cache of provider responses"""

    def __init__(self, cache_dir: str, file_name: str = CACHE_FILE_NAME):
        self._path = Path(cache_dir) / file_name
        self._entries: Dict[str, Any] = {}
        self._lock = asyncio.Lock()
        self._loaded = False

    @property
    def path(self) -> Path:
        return self._path

    def _load(self) -> None:
        if self._loaded:
            return
        self._loaded = True
        if not self._path.exists():
            return
        skipped = 0
        with self._path.open("r", encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                    self._entries[record["key"]] = record["value"]
                except (json.JSONDecodeError, KeyError, TypeError):
                    skipped += 1
        if skipped:
            logger.warning(
                f"Skipped {skipped} unreadable cache records in {self._path}"
            )
        logger.debug(f"Loaded {len(self._entries)} cached responses from {self._path}")

    async def get(self, key: str) -> Optional[Any]:
        """Get cached value"""
        self._load()
        return self._entries.get(key)

    async def exists(self, key: str) -> bool:
        self._load()
        return key in self._entries

    async def save(self, key: str, entity: Any) -> Any:
        """Store value and append it to the cache file"""
        async with self._lock:
            self._load()
            if self._entries.get(key) == entity:
                return entity
            self._entries[key] = entity
            self._path.parent.mkdir(parents=True, exist_ok=True)
            record = json.dumps(
                {"key": key, "value": entity}, sort_keys=True, ensure_ascii=False
            )
            with self._path.open("a", encoding="utf-8") as handle:
                handle.write(record + "\n")
        return entity

    def __len__(self) -> int:
        self._load()
        return len(self._entries)


class MemoryResponseCache(ResponseCache):
    """Process-local cache used when persistence is disabled"""

    def __init__(self) -> None:
        self._entries: Dict[str, Any] = {}

    async def get(self, key: str) -> Optional[Any]:
        return self._entries.get(key)

    async def exists(self, key: str) -> bool:
        return key in self._entries

    async def save(self, key: str, entity: Any) -> Any:
        self._entries[key] = entity
        return entity

    def __len__(self) -> int:
        return len(self._entries)
