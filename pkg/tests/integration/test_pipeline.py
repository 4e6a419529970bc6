import csv
import io
import json
import random

import pytest

from src.domain.exceptions import PipelineError
from src.domain.services.metrics import count_orphans
from src.domain.services.validation import validate_tree
from src.infrastructure.persistence import save_tree, write_layer_diagnostics

pytestmark = pytest.mark.integration


@pytest.fixture
async def hero_result(build_stack, hero_config):
    return await build_stack(hero_config).pipeline.run_pipeline()


class TestHierarchy:
    async def test_three_layers_and_valid(self, hero_result, hero_dir):
        tree = hero_result.tree
        assert [layer.artifact_type for layer in tree.layers] == [
            "code summary",
            "user story",
            "epic",
        ]
        assert validate_tree(tree) == []
        assert len(tree.layers[0]) == len(list(hero_dir.glob("*.java")))
        assert tree.provenance["mode"] == "hierarchy"

    async def test_no_orphans_below_top(self, hero_result):
        tree = hero_result.tree
        assert count_orphans(tree, 0) == 0
        assert count_orphans(tree, 1) == 0

    async def test_layers_shrink_upwards(self, hero_result):
        sizes = [len(layer) for layer in hero_result.tree.layers]
        assert all(upper <= lower for lower, upper in zip(sizes, sizes[1:]))
        assert sizes[-1] >= 1

    async def test_every_cluster_produced_artifacts(self, hero_result):
        for diagnostics in hero_result.diagnostics:
            for record in diagnostics.generation_records:
                assert 1 <= record.n_targets <= len(record.source_ids)
                assert len(record.generated_ids) == record.n_targets

    async def test_deterministic(self, build_stack, hero_config, hero_result):
        again = await build_stack(hero_config).pipeline.run_pipeline()
        assert save_tree(again.tree) == save_tree(hero_result.tree)

    async def test_debug_dumps(self, hero_result, tmp_path):
        diagnostics = hero_result.diagnostics[0]
        paths = write_layer_diagnostics(str(tmp_path), diagnostics)
        assert sorted(p.name for p in paths) == [
            "layer-1-candidates.json",
            "layer-1-flagged.json",
            "layer-1-similarity.csv",
        ]
        candidates = json.loads((tmp_path / "layer-1-candidates.json").read_text())
        assert candidates["artifact_type"] == "user story"
        assert candidates["format_template"]
        similarity = (tmp_path / "layer-1-similarity.csv").read_text()
        rows = list(csv.reader(io.StringIO(similarity)))
        assert rows[0][1:] == diagnostics.similarity_children
        assert len(rows) == len(diagnostics.similarity_parents) + 1


async def test_single_file_chain(build_stack, hero_config, tmp_path):
    (tmp_path / "Hero.java").write_text("public class Hero { void rescue() {} }\n")
    config = hero_config.with_overrides(source_root=str(tmp_path))
    tree = (await build_stack(config).pipeline.run_pipeline()).tree
    assert [len(layer) for layer in tree.layers] == [1, 1, 1]
    assert len(tree.links) == 2
    assert validate_tree(tree) == []


async def test_empty_source_dir(build_stack, hero_config, tmp_path):
    config = hero_config.with_overrides(source_root=str(tmp_path))
    with pytest.raises(PipelineError, match="no inputs"):
        await build_stack(config).pipeline.run_pipeline()


def java_class(name: str, methods) -> str:
    body = "\n".join(f"    void {method}() {{}}" for method in methods)
    return f"public class {name} {{\n{body}\n}}\n"


async def test_user_format_template_is_used(build_stack, hero_config, tmp_path):
    (tmp_path / "Shop.java").write_text(java_class("Shop", ["sell"]))
    config = hero_config.with_overrides(source_root=str(tmp_path))
    layer = config.layers[0].model_copy(update={"format_template": "Story: <goal>"})
    config = config.model_copy(update={"layers": [layer]})
    result = await build_stack(config).pipeline.run_pipeline()
    assert result.diagnostics[0].format_template == "Story: <goal>"


async def test_same_file_in_two_directories(build_stack, hero_config, tmp_path):
    util = (
        "public class Util { static int clamp(int value) "
        "{ return Math.max(0, value); } }\n"
    )
    for folder in ("a", "b"):
        (tmp_path / folder).mkdir()
        (tmp_path / folder / "Util.java").write_text(util)
    (tmp_path / "Hero.java").write_text(java_class("Hero", ["rescue"]))
    config = hero_config.with_overrides(source_root=str(tmp_path))

    tree = (await build_stack(config).pipeline.run_pipeline()).tree

    code = tree.layers[0].artifacts
    assert sorted(a.source_path for a in code) == [
        "Hero.java",
        "a/Util.java",
        "b/Util.java",
    ]
    assert len({a.id for a in code}) == 3
    assert validate_tree(tree) == []
    assert count_orphans(tree, 0) == 0


TOPICS = [
    ["hero", "rescue", "citizen", "power", "mission", "city"],
    ["villain", "crime", "steal", "bank", "escape", "plan"],
    ["inventory", "item", "money", "shop", "purchase", "price"],
    ["score", "level", "ranking", "player", "reward", "badge"],
    ["map", "district", "route", "travel", "street", "zone"],
]


def write_random_project(root, seed: int) -> None:
    """3 to 12 Java files, each built mostly from one topic's vocabulary"""
    rng = random.Random(seed)
    for number in range(rng.randint(3, 12)):
        topic = rng.choice(TOPICS)
        words = [rng.choice(topic) for _ in range(rng.randint(8, 30))]
        words += rng.sample([w for t in TOPICS for w in t], 3)
        name = f"Unit{number}"
        (root / f"{name}.java").write_text(java_class(name, words))


@pytest.mark.parametrize("seed", range(100))
async def test_random_projects_leave_no_orphans(
    build_stack, hero_config, tmp_path, seed
):
    write_random_project(tmp_path, seed)
    config = hero_config.with_overrides(source_root=str(tmp_path), seed=seed)

    result = await build_stack(config).pipeline.run_pipeline()

    tree = result.tree
    assert validate_tree(tree) == []
    for layer in tree.layers[:-1]:
        assert count_orphans(tree, layer.index) == 0
    for diagnostics in result.diagnostics:
        placed = [m for cluster in diagnostics.clusters for m in cluster]
        placed += diagnostics.singletons
        assert sorted(placed) == sorted(diagnostics.similarity_children)


class TestBaseline:
    async def test_cutoff_above_one_links_nothing(self, build_stack, hero_config):
        config = hero_config.model_copy(update={"baseline_cutoff": 1.01})
        tree = (await build_stack(config).baseline.run_baseline()).tree
        assert tree.links == []
        assert len(tree.layers) == 3
        assert tree.provenance["mode"] == "baseline"

    async def test_zero_cutoff_links_everything(self, build_stack, hero_config):
        config = hero_config.model_copy(update={"baseline_cutoff": 0.0})
        tree = (await build_stack(config).baseline.run_baseline()).tree
        expected = sum(
            len(lower) * len(upper)
            for lower, upper in zip(tree.layers, tree.layers[1:])
        )
        assert len(tree.links) == expected
        assert validate_tree(tree) == []

    async def test_shares_summaries_with_hierarchy(
        self, build_stack, hero_config, hero_result
    ):
        tree = (await build_stack(hero_config).baseline.run_baseline()).tree
        assert tree.layers[0] == hero_result.tree.layers[0]

    async def test_dissimilar_child_is_left_orphaned(
        self, build_stack, hero_config, tmp_path
    ):
        hero_words = "hero rescue citizen power mission city patrol shield"
        for name in ("HeroA", "HeroB", "HeroC"):
            (tmp_path / f"{name}.java").write_text(
                java_class(name, hero_words.split() * 3)
            )
        (tmp_path / "Tax.java").write_text(
            java_class("Tax", ["invoice", "ledger", "vat"])
        )
        config = hero_config.with_overrides(source_root=str(tmp_path))
        config = config.model_copy(update={"layers": config.layers[:1]})

        baseline = (await build_stack(config).baseline.run_baseline()).tree
        hierarchy = (await build_stack(config).pipeline.run_pipeline()).tree

        tax = next(
            a for a in baseline.layers[0].artifacts if a.source_path == "Tax.java"
        )
        assert tax.id not in baseline.parented_ids()
        assert count_orphans(baseline, 0) >= 1
        assert count_orphans(hierarchy, 0) == 0
