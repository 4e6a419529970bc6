import pytest

from src.application.use_cases import CODE_ARTIFACT_TYPE, SummarizeUseCases
from src.domain.exceptions import ProviderContentError, SourceError
from src.domain.value_objects.source import SourceFile

pytestmark = pytest.mark.unit

HERO_SUMMARY = (
    "This code provides the framework for a user to take control of a hero character, "
    "move it around the city and rescue citizens from villains."
)


@pytest.fixture
def summarizer(completion, prompts) -> SummarizeUseCases:
    return SummarizeUseCases(completion, prompts)


def source_file(path: str, content: str) -> SourceFile:
    return SourceFile(
        path=path,
        language=SourceFile.language_for(path),
        content=content,
        loc=content.count("\n"),
    )


@pytest.fixture
def hero_source(hero_dir) -> SourceFile:
    return source_file("Hero.java", (hero_dir / "Hero.java").read_text())


async def test_canned_summary(summarizer, completion_provider, hero_source):
    (outline_request,) = summarizer.outline_requests(hero_source)
    outline = "- play as a hero\n- rescue citizens"
    completion_provider.seed(outline_request.digest(), outline)
    polish = summarizer.polish_request(hero_source, outline)
    completion_provider.seed(polish.digest(), HERO_SUMMARY)

    artifact = await summarizer.summarize_code(hero_source)
    assert artifact.body.startswith(
        "This code provides the framework for a user "
        "to take control of a hero character"
    )
    assert artifact.title == "Hero"
    assert artifact.source_path == "Hero.java"
    assert artifact.layer_index == 0
    assert artifact.artifact_type == CODE_ARTIFACT_TYPE


async def test_empty_file(summarizer):
    with pytest.raises(SourceError, match="empty source file"):
        await summarizer.summarize_code(source_file("Empty.java", "  \n\n"))


async def test_whitespace_summary(summarizer, completion_provider, hero_source):
    (outline_request,) = summarizer.outline_requests(hero_source)
    completion_provider.seed(outline_request.digest(), "- outline")
    polish = summarizer.polish_request(hero_source, "- outline")
    completion_provider.seed(polish.digest(), " \n ")
    with pytest.raises(ProviderContentError, match="Hero.java"):
        await summarizer.summarize_code(hero_source)


def test_large_file_outlined_in_parts(completion, prompts):
    content = "".join(f"void step{i}() {{ move({i}); }}\n" for i in range(400))
    summarizer = SummarizeUseCases(completion, prompts, token_budget=1000)
    requests = summarizer.outline_requests(source_file("Game.java", content))
    assert len(requests) > 1
    assert f"part 1 of {len(requests)}" in requests[0].user_prompt


async def test_summarize_all_orders_by_path(summarizer):
    sources = [
        source_file("b/Shop.java", "class Shop {}\n"),
        source_file("a/Item.java", "class Item {}\n"),
    ]
    layer = await summarizer.summarize_all(sources)
    assert [a.source_path for a in layer.artifacts] == ["a/Item.java", "b/Shop.java"]
    assert layer.index == 0


async def test_summarize_all_skips_failed_when_asked(summarizer):
    sources = [
        source_file("Shop.java", "class Shop {}\n"),
        source_file("Empty.java", ""),
    ]
    with pytest.raises(SourceError):
        await summarizer.summarize_all(sources)
    layer = await summarizer.summarize_all(sources, skip_failed=True)
    assert [a.title for a in layer.artifacts] == ["Shop"]
