import pytest

from src.domain.exceptions import ArgumentError
from src.infrastructure.prompts import PromptLibrary, PromptTemplate

pytestmark = pytest.mark.unit

TEMPLATE_NAMES = [
    "summarize_outline",
    "summarize_polish",
    "format",
    "generate",
    "generate_retry",
    "regenerate",
    "baseline",
]


@pytest.mark.parametrize("name", TEMPLATE_NAMES)
def test_bundled_templates_load(prompts, name):
    template = prompts.get(name)
    assert template.user
    assert template.slots()


def test_render_fills_slots(prompts):
    request = prompts.get("format").render(artifact_type="epic", max_tokens=256)
    assert '"epic"' in request.user_prompt
    assert request.max_tokens == 256
    assert "{{" not in request.user_prompt


def test_missing_slot(prompts):
    with pytest.raises(ArgumentError, match="artifact_type"):
        prompts.get("format").render()


def test_unknown_template(prompts):
    with pytest.raises(ArgumentError):
        prompts.get("no_such_prompt")


def test_user_section_required():
    with pytest.raises(ArgumentError):
        PromptTemplate.parse("broken", "[system]\nonly a system prompt\n")


def test_custom_directory(tmp_path):
    (tmp_path / "hello.txt").write_text("[user]\nHi {{ name }}\n")
    request = PromptLibrary(str(tmp_path)).get("hello").render(name="Ada")
    assert request.user_prompt == "Hi Ada"
    assert request.system_prompt == "You are a helpful assistant."


def test_digest_tracks_prompt_text(prompts):
    first = prompts.get("format").render(artifact_type="epic")
    second = prompts.get("format").render(artifact_type="user story")
    assert first.digest() != second.digest()
    assert first.digest() == prompts.get("format").render(artifact_type="epic").digest()
