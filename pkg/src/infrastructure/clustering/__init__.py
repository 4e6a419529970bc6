from .techniques import SklearnClusteringBackend, labels_to_groups

__all__ = ["SklearnClusteringBackend", "labels_to_groups"]
