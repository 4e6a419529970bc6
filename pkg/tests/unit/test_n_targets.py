import numpy as np
import pytest

from src.domain.services.n_targets import (
    compute_n_targets,
    concept_diversity,
    information_density,
    max_inverse_cohesion,
    n_targets_from,
    target_bounds,
)
from src.domain.value_objects.params import LayerSpec

pytestmark = pytest.mark.unit


def test_four_file_cluster():
    density = information_density([200, 180, 190, 160], 109.0)
    assert density == pytest.approx(6.7, abs=0.01)
    assert n_targets_from(0.56, density, 4) == 3


def test_singleton_gets_one():
    assert n_targets_from(1.0, 40.0, 1) == 1


def test_large_raw_value_clamped_below_cluster_size():
    assert n_targets_from(1.0, 9.0, 4) == 3


def test_small_raw_value_raised_above_half():
    assert n_targets_from(0.1, 1.0, 10) == 6


def test_bounds_are_strict():
    assert target_bounds(4, (0.5, 1.0)) == (3, 3)
    assert target_bounds(10, (0.5, 1.0)) == (6, 9)


def test_result_strictly_inside_bounds():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        size = int(rng.integers(3, 41))
        cohesion = float(rng.uniform(0.01, 1.0))
        importance = float(rng.uniform(0, 50))
        result = n_targets_from(cohesion, importance, size)
        assert 0.5 * size < result < size


def test_concept_diversity_scales_to_most_diverse():
    max_inverse = max_inverse_cohesion([0.5, 0.8, None, -0.2])
    assert max_inverse == pytest.approx(2.0)
    assert concept_diversity(0.5, max_inverse) == pytest.approx(1.0)
    assert concept_diversity(0.8, max_inverse) == pytest.approx(0.625)
    assert concept_diversity(None, max_inverse) == 1.0


def test_density_without_layer_mean():
    assert information_density([3, 4], 0.0) == 7.0


def test_compute_n_targets_uses_layer_spec_bounds():
    spec = LayerSpec(artifact_type="epic", n_target_bounds=(0.2, 0.6))
    n, diversity, density = compute_n_targets(0.5, [10] * 10, 10.0, 2.0, spec)
    assert diversity == pytest.approx(1.0)
    assert density == pytest.approx(10.0)
    assert n == 5


def test_layer_spec_rejects_inverted_bounds():
    with pytest.raises(ValueError):
        LayerSpec(artifact_type="epic", n_target_bounds=(0.8, 0.4))
