import math

import pytest

from src.application.use_cases import GenerationUseCases, parse_items
from src.application.use_cases.generation_use_cases import render_sources
from src.domain.entities.artifact import Artifact
from src.domain.exceptions import ArgumentError, GenerationError
from src.domain.services.similarity import SimilarityIndex
from src.domain.value_objects.embedding import Embedding
from src.domain.value_objects.params import LayerSpec
from tests.factories import (
    CodeArtifactFactory,
    StaticBackend,
    embeddings_from_gram,
    engine_for,
)

pytestmark = pytest.mark.unit

STORY_FORMAT = (
    "As a [type of user], I want to [action or goal] so that [reason or benefit]"
)
HERO_BODY = "This code lets a user play as a hero and rescue citizens."
VILLAIN_BODY = "This code lets a user play as a villain and commit crimes."


@pytest.fixture
def generator(completion, prompts, engine) -> GenerationUseCases:
    return GenerationUseCases(completion, prompts, engine)


@pytest.fixture
def sources():
    return [
        CodeArtifactFactory(title="Hero", body=HERO_BODY),
        CodeArtifactFactory(title="Villain", body=VILLAIN_BODY),
    ]


def numbered(*titles: str) -> str:
    return "\n\n".join(
        f"{i}. Title: {t}\nBody: As a player, I want {t.lower()}"
        for i, t in enumerate(titles, 1)
    )


def generate_values(sources, n_targets: int) -> dict:
    return {
        "artifact_type": "user story",
        "template": STORY_FORMAT,
        "n_targets": n_targets,
        "sources": render_sources(sources),
    }


class TestParseItems:
    def test_title_and_body_lines(self):
        text = (
            "Here you go:\n"
            "1. Title: Play hero\n"
            "Body: As a player, I want to be a hero\n"
            "so that I can save the city\n\n"
            "2) **Title:** Shop\n"
            "Description: Buy items\n"
            "3. Title: Missing body\n"
        )
        assert parse_items(text) == [
            (
                "Play hero",
                "As a player, I want to be a hero\nso that I can save the city",
            ),
            ("Shop", "Buy items"),
        ]

    def test_no_list(self):
        assert parse_items("I cannot help with that.") == []


class TestFormat:
    async def test_user_template_skips_provider(self, generator, completion_provider):
        spec = LayerSpec(artifact_type="epic", format_template="Epic: <goal>")
        assert await generator.generate_format(spec) == "Epic: <goal>"
        assert completion_provider.calls == 0

    async def test_generated_once_per_type(
        self, generator, completion_provider, prompts
    ):
        request = prompts.get("format").render(
            artifact_type="user story", max_tokens=256
        )
        completion_provider.seed(request.digest(), STORY_FORMAT + "\n")
        spec = LayerSpec(artifact_type="user story")
        assert await generator.generate_format(spec) == STORY_FORMAT
        assert await generator.format_for(" user story ") == STORY_FORMAT
        assert completion_provider.calls == 1

    async def test_empty_type(self, generator):
        with pytest.raises(ArgumentError):
            await generator.format_for("   ")


class TestGenerateArtifacts:
    async def test_exact_count(self, generator, sources):
        artifacts = await generator.generate_artifacts(
            sources, STORY_FORMAT, 2, 1, "user story"
        )
        assert len(artifacts) == 2
        assert all(
            a.layer_index == 1 and a.artifact_type == "user story" for a in artifacts
        )
        assert all(a.source_path is None for a in artifacts)
        assert len({a.id for a in artifacts}) == 2

    async def test_short_reply_retried(
        self, generator, sources, prompts, completion_provider
    ):
        values = generate_values(sources, 2)
        first = prompts.get("generate").render(max_tokens=2048, **values)
        completion_provider.seed(first.digest(), numbered("Only one"))
        artifacts = await generator.generate_artifacts(
            sources, STORY_FORMAT, 2, 1, "user story"
        )
        assert len(artifacts) == 2
        assert completion_provider.calls == 2

    async def test_still_short_after_retry(
        self, generator, sources, prompts, completion_provider
    ):
        values = generate_values(sources, 2)
        first = prompts.get("generate").render(max_tokens=2048, **values)
        retry = prompts.get("generate_retry").render(max_tokens=2048, got=1, **values)
        completion_provider.seed(first.digest(), numbered("Only one"))
        completion_provider.seed(retry.digest(), numbered("Still one"))
        with pytest.raises(GenerationError):
            await generator.generate_artifacts(
                sources, STORY_FORMAT, 2, 1, "user story"
            )

    async def test_long_reply_truncated(
        self, generator, sources, prompts, completion_provider
    ):
        values = generate_values(sources, 2)
        first = prompts.get("generate").render(max_tokens=2048, **values)
        retry = prompts.get("generate_retry").render(max_tokens=2048, got=3, **values)
        completion_provider.seed(first.digest(), numbered("A", "B", "C"))
        completion_provider.seed(retry.digest(), numbered("D", "E", "F"))
        artifacts = await generator.generate_artifacts(
            sources, STORY_FORMAT, 2, 1, "user story"
        )
        assert [a.title for a in artifacts] == ["D", "E"]

    async def test_regeneration_uses_duplicates(
        self, generator, sources, prompts, completion_provider
    ):
        old = await generator.generate_artifacts(
            sources, STORY_FORMAT, 2, 1, "user story"
        )
        values = generate_values(sources[:1], 1)
        values["duplicates"] = "\n".join(f"- {a.title}: {a.body}" for a in old)
        request = prompts.get("regenerate").render(max_tokens=2048, **values)
        completion_provider.seed(request.digest(), numbered("Rescue citizens"))
        fresh = await generator.generate_artifacts(
            sources[:1], STORY_FORMAT, 1, 1, "user story", duplicates=old
        )
        assert [a.title for a in fresh] == ["Rescue citizens"]


class TestDuplicateClusters:
    GRAM = [
        [1.0, 0.95, 0.1, 0.1],
        [0.95, 1.0, 0.1, 0.1],
        [0.1, 0.1, 1.0, 0.6],
        [0.1, 0.1, 0.6, 1.0],
    ]
    IDS = ["g1", "g2", "g3", "g4"]

    def generator(self, completion, prompts) -> GenerationUseCases:
        backend = StaticBackend([["g1", "g2"], ["g3", "g4"]])
        return GenerationUseCases(completion, prompts, engine_for(backend))

    def test_cohesive_group_from_two_clusters(self, completion, prompts):
        embeddings = embeddings_from_gram(self.IDS, self.GRAM)
        origin = {"g1": "L1-C0", "g2": "L1-C1", "g3": "L1-C0", "g4": "L1-C1"}
        generator = self.generator(completion, prompts)
        groups = generator.find_duplicate_clusters(self.IDS, embeddings, origin, 1)
        assert groups == [["g1", "g2"]]

    def test_same_origin_is_not_duplicate(self, completion, prompts):
        embeddings = embeddings_from_gram(self.IDS, self.GRAM)
        origin = {i: "L1-C0" for i in self.IDS}
        generator = self.generator(completion, prompts)
        assert generator.find_duplicate_clusters(self.IDS, embeddings, origin, 1) == []

    def test_too_few_artifacts(self, completion, prompts):
        embeddings = embeddings_from_gram(self.IDS, self.GRAM)
        generator = self.generator(completion, prompts)
        groups = generator.find_duplicate_clusters(["g1"], embeddings, {"g1": "x"})
        assert groups == []


def unit(angle_cos: float, sign: float = 1.0) -> Embedding:
    return Embedding.from_values([angle_cos, sign * math.sqrt(1 - angle_cos ** 2)])


def test_trace_duplicate_sources_within_tolerance():
    index = SimilarityIndex(
        {
            "g1": Embedding.from_values([1.0, 0.0]),
            "s1": unit(0.9),
            "s2": unit(0.85, -1.0),
            "s3": unit(0.5),
        }
    )
    fresh = GenerationUseCases.trace_duplicate_sources(
        ["g1"], {"g1": ["s1", "s2", "s3"]}, index
    )
    assert fresh == ["s1", "s2"]


def test_fresh_cohesion():
    index = SimilarityIndex(
        {"a": Embedding.from_values([1.0, 0.0]), "b": Embedding.from_values([0.0, 1.0])}
    )
    assert GenerationUseCases.fresh_cohesion(index, ["a"]) is None
    assert GenerationUseCases.fresh_cohesion(index, ["a", "b"]) == pytest.approx(0.0)


US1 = (
    "Customize Character Name and Image",
    "As a player, I want to be able to customize my character's name and image "
    "so that I can personalize my gameplay experience.",
)
US2 = (
    "View Character Inventory and Money",
    "As a player, I want to be able to view my character's inventory and money "
    "so that I can make informed decisions when interacting with the game world.",
)
US3 = (
    "Progress Character Through Story",
    "As a player, I want to be able to commit crimes and take heroic actions "
    "that will progress my character through the game's story and scenarios.",
)
US4 = (
    "Customize Character Identity",
    "As a player who wants an immersive role playing experience, "
    "I want to be able to customize a character "
    "with a name and choose to be a hero or villain "
    "so that I can define my virtual identity in the world",
)
US5 = (
    "Character Entity Templates for Game Testing",
    "As a game developer, I want the system to allow defining character entities "
    "via reusable templates and validated testing so that playable characters "
    "can be reliably generated with consistent "
    "expected behaviors for use in game scenarios.",
)
CHARACTER_CUSTOMIZATION = (
    "Character Customization",
    "As a player, I want to name and customize the appearance of my character "
    "so that I can roleplay a unique persona in the game world.",
)
HERO_OR_VILLAIN = (
    "Play as Hero or Villian",
    "As a player, I want the option to play as either a hero or villain "
    "so that I can experience different perspectives "
    "when interacting with the game systems.",
)


def reply(*items) -> str:
    return "\n\n".join(
        f"{i}. Title: {title}\nBody: {body}"
        for i, (title, body) in enumerate(items, 1)
    )


@pytest.fixture
def character_cluster():
    return [
        CodeArtifactFactory(
            title="Character",
            body="This code stores a character's name, image and money.",
        ),
        CodeArtifactFactory(title="Hero", body=HERO_BODY),
        CodeArtifactFactory(
            title="Inventory", body="This code keeps the items a character carries."
        ),
        CodeArtifactFactory(title="Villain", body=VILLAIN_BODY),
    ]


class TestHeroStories:
    async def test_three_stories_from_the_character_cluster(
        self, generator, character_cluster, prompts, completion_provider
    ):
        values = generate_values(character_cluster, 3)
        request = prompts.get("generate").render(max_tokens=2048, **values)
        completion_provider.seed(request.digest(), reply(US1, US2, US3))

        stories = await generator.generate_artifacts(
            character_cluster, STORY_FORMAT, 3, 1, "user story"
        )

        assert [(s.title, s.body) for s in stories] == [US1, US2, US3]
        assert all(s.layer_index == 1 and s.source_path is None for s in stories)
        assert completion_provider.calls == 1

    async def test_overlapping_stories_regenerated(
        self, generator, character_cluster, prompts, completion_provider
    ):
        duplicates = [
            Artifact.create(
                layer_index=1, artifact_type="user story", title=title, body=body
            )
            for title, body in (US1, US4, US5)
        ]
        fresh_sources = character_cluster[:2]
        values = generate_values(fresh_sources, 2)
        values["duplicates"] = "\n".join(f"- {a.title}: {a.body}" for a in duplicates)
        request = prompts.get("regenerate").render(max_tokens=2048, **values)
        completion_provider.seed(
            request.digest(), reply(CHARACTER_CUSTOMIZATION, HERO_OR_VILLAIN)
        )

        fresh = await generator.generate_artifacts(
            fresh_sources, STORY_FORMAT, 2, 1, "user story", duplicates=duplicates
        )

        assert [(a.title, a.body) for a in fresh] == [
            CHARACTER_CUSTOMIZATION,
            HERO_OR_VILLAIN,
        ]
        assert not {a.id for a in fresh} & {a.id for a in duplicates}
