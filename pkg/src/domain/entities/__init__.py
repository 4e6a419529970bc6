from .artifact import Artifact, Layer
from .artifact_tree import ArtifactTree, sorted_links
from .cluster import Cluster, Clustering
from .trace_link import TraceLink

__all__ = [
    "Artifact",
    "ArtifactTree",
    "Cluster",
    "Clustering",
    "Layer",
    "TraceLink",
    "sorted_links",
]
