import math
from typing import Iterable, Optional, Tuple

from ..value_objects.params import LayerSpec


def inverse_cohesion(cohesion: Optional[float]) -> Optional[float]:
    """1/h, or None when h is missing or nonpositive"""
    if cohesion is None or cohesion <= 0:
        return None
    return 1.0 / cohesion


def max_inverse_cohesion(cohesions: Iterable[Optional[float]]) -> Optional[float]:
    inverses = [
        inv for inv in (inverse_cohesion(h) for h in cohesions) if inv is not None
    ]
    return max(inverses) if inverses else None


def concept_diversity(cohesion: Optional[float], max_inverse: Optional[float]) -> float:
    """Inverse cohesion scaled so the most diverse cluster of the layer scores 1"""
    inverse = inverse_cohesion(cohesion)
    if inverse is None or max_inverse is None:
        return 1.0
    return min(1.0, inverse / max_inverse)


def information_density(member_sizes: Iterable[int], layer_mean_size: float) -> float:
    """Cluster content size relative to the layer's mean artifact size"""
    total = sum(member_sizes)
    if layer_mean_size <= 0:
        return float(max(total, 1))
    return total / layer_mean_size


def target_bounds(cluster_size: int, bounds: Tuple[float, float]) -> Tuple[int, int]:
    """Integer range strictly inside (lower * n, upper * n)"""
    lower, upper = bounds
    low = math.floor(lower * cluster_size) + 1
    high = math.ceil(upper * cluster_size) - 1
    return low, high


def n_targets_from(
    diversity: float,
    density: float,
    cluster_size: int,
    bounds: Tuple[float, float] = (0.5, 1.0),
) -> int:
    """Truncated diversity x density, clamped into the tree-pressure bounds"""
    if cluster_size <= 2:
        return 1
    raw = math.trunc(diversity * density)
    low, high = target_bounds(cluster_size, bounds)
    if low > high:
        return max(1, high)
    return max(low, min(high, raw))


def compute_n_targets(
    cohesion: Optional[float],
    member_sizes: Iterable[int],
    layer_mean_size: float,
    max_inverse: Optional[float],
    spec: LayerSpec,
) -> Tuple[int, float, float]:
    """Return (n_targets, concept diversity, information density) for one cluster"""
    sizes = list(member_sizes)
    diversity = concept_diversity(cohesion, max_inverse)
    density = information_density(sizes, layer_mean_size)
    n = n_targets_from(diversity, density, len(sizes), spec.n_target_bounds)
    return n, diversity, density
