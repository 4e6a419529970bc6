from .csv_loaders import parse_concepts, parse_ground_truth
from .debug_writer import write_layer_diagnostics
from .tree_codec import TreeDocument, load_tree, save_tree
from .tree_repository import FileTreeRepository, write_atomic

__all__ = [
    "parse_concepts",
    "parse_ground_truth",
    "write_layer_diagnostics",
    "TreeDocument",
    "load_tree",
    "save_tree",
    "FileTreeRepository",
    "write_atomic",
]
