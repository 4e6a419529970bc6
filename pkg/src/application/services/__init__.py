from .cluster_engine import ClusterEngine

__all__ = ["ClusterEngine"]
