"""
File-backed tree repository with atomic writes
"""
import logging
import os
import tempfile
from pathlib import Path
from typing import Optional

from ...domain.entities import ArtifactTree
from ...domain.repositories.tree_repository import TreeRepository
from .tree_codec import load_tree, save_tree

logger = logging.getLogger(__name__)


def write_atomic(path: str, data: bytes) -> None:
    """Write to a temp file in the target directory, then rename over the target"""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, temp_name = tempfile.mkstemp(
        prefix=f".{target.name}.", suffix=".tmp", dir=str(target.parent)
    )
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(temp_name, target)
    except BaseException:
        if os.path.exists(temp_name):
            os.unlink(temp_name)
        raise


class FileTreeRepository(TreeRepository):
    """Trees stored as JSON files; the key is the file path"""

    def encode(self, tree: ArtifactTree) -> bytes:
        return save_tree(tree)

    def decode(self, data: bytes) -> ArtifactTree:
        return load_tree(data)

    async def save(self, key: str, entity: ArtifactTree) -> ArtifactTree:
        write_atomic(key, self.encode(entity))
        logger.info(
            f"Wrote tree '{entity.project_name}' "
            f"with {len(entity.layers)} layers to {key}"
        )
        return entity

    async def get(self, key: str) -> Optional[ArtifactTree]:
        path = Path(key)
        if not path.exists():
            return None
        return self.decode(path.read_bytes())

    async def exists(self, key: str) -> bool:
        return Path(key).exists()
