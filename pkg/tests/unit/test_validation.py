import pytest

from src.domain.entities import Artifact, ArtifactTree, Layer, TraceLink
from src.domain.services.validation import validate_tree
from tests.factories import ArtifactFactory, CodeArtifactFactory, two_layer_tree

pytestmark = pytest.mark.unit


def test_empty_tree_is_valid():
    assert validate_tree(ArtifactTree(project_name="empty")) == []


def test_fixture_tree_is_valid():
    assert validate_tree(two_layer_tree()) == []


def test_dangling_parent():
    tree = two_layer_tree()
    child = tree.layers[0].artifacts[0].id
    dangling = TraceLink.create("missing", child, 0.5)
    broken = tree.model_copy(update={"links": [*tree.links, dangling]})
    violations = validate_tree(broken)
    assert len(violations) == 1
    assert "dangling parent missing" in violations[0]


def test_same_layer_link_is_non_adjacent():
    tree = two_layer_tree()
    a, b = tree.layers[0].artifacts[:2]
    sideways = TraceLink.create(a.id, b.id, 0.5)
    broken = tree.model_copy(update={"links": [*tree.links, sideways]})
    violations = validate_tree(broken)
    assert len(violations) == 1
    assert "non-adjacent layers" in violations[0]


def test_duplicate_links_and_ids():
    code = CodeArtifactFactory()
    story = ArtifactFactory()
    link = TraceLink.create(story.id, code.id, 0.9)
    tree = ArtifactTree(
        project_name="dup",
        layers=[
            Layer(index=0, artifact_type="code summary", artifacts=[code, code]),
            Layer(index=1, artifact_type="user story", artifacts=[story]),
        ],
        links=[link, link],
    )
    violations = validate_tree(tree)
    assert any("duplicate artifact id" in v for v in violations)
    assert any("duplicate link" in v for v in violations)


def test_layer_rules():
    generated_with_path = ArtifactFactory(source_path="src/Hero.java")
    code_without_path = Artifact.create(0, "code summary", "Hero", "Plays a hero.")
    tree = ArtifactTree(
        project_name="rules",
        layers=[
            Layer(index=0, artifact_type="code summary", artifacts=[code_without_path]),
            Layer(index=2, artifact_type="user story", artifacts=[generated_with_path]),
        ],
    )
    violations = validate_tree(tree)
    assert any("no source_path" in v for v in violations)
    assert any("has a source_path" in v for v in violations)
    assert any("contiguous" in v for v in violations)


def test_content_ids_are_stable():
    first = Artifact.create(1, "epic", " Play ", "Body text ")
    second = Artifact.create(1, "epic", "Play", "Body text")
    assert first.id == second.id
    assert first.size == 2


def test_code_ids_include_the_source_path():
    fields = (0, "code summary", "Util", "Parses input.")
    first = Artifact.create(*fields, source_path="a/Util.java")
    second = Artifact.create(*fields, source_path="b/Util.java")
    assert first.id != second.id
    assert first.id == Artifact.create(*fields, source_path="a/Util.java").id
