"""
Export use cases
"""

import logging
from typing import Optional

from ...domain.entities.artifact_tree import ArtifactTree
from ...domain.repositories.tree_repository import TreeRepository
from ...domain.exceptions import ArgumentError
from ...infrastructure.export import export_tree
from ...infrastructure.persistence import write_atomic

logger = logging.getLogger(__name__)


class ExportUseCases:
    """Load a stored tree and render it"""

    def __init__(self, tree_repository: TreeRepository):
        self._trees = tree_repository

    async def load(self, tree_path: str) -> ArtifactTree:
        tree = await self._trees.get(tree_path)
        if tree is None:
            raise ArgumentError(f"Tree file {tree_path} does not exist")
        return tree

    def export(self, tree: ArtifactTree, export_format: str) -> bytes:
        return export_tree(tree, export_format)

    async def export_file(
        self, tree_path: str, export_format: str, out_path: Optional[str] = None
    ) -> bytes:
        """Render a stored tree; write it atomically when out_path is given"""
        tree = await self.load(tree_path)
        data = self.export(tree, export_format)
        if out_path:
            write_atomic(out_path, data)
            logger.info(f"Exported {tree_path} as {export_format} to {out_path}")
        return data
