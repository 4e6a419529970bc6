"""
Code summarization use cases

Each source file becomes one layer-0 artifact: an outline call per chunk,
then one polishing call over the joined outlines.
"""

import asyncio
import logging
from typing import List, Sequence

from ...domain.entities.artifact import Artifact, Layer
from ...domain.exceptions import ProviderContentError, ProviderError, SourceError
from ...domain.value_objects.completion import CompletionRequest
from ...domain.value_objects.source import SourceFile
from ...infrastructure.prompts import PromptLibrary
from ...infrastructure.sources import chunk_source
from ..interfaces.providers import CompletionService

logger = logging.getLogger(__name__)

CODE_ARTIFACT_TYPE = "code summary"
OUTLINE_SEPARATOR = "\n\n"


class SummarizeUseCases:
    """Stage 0: source files to summary artifacts"""

    def __init__(
        self,
        completion: CompletionService,
        prompts: PromptLibrary,
        token_budget: int = 24000,
    ):
        self._completion = completion
        self._prompts = prompts
        self._token_budget = token_budget

    def outline_requests(self, source: SourceFile) -> List[CompletionRequest]:
        chunks = chunk_source(source, self._token_budget)
        template = self._prompts.get("summarize_outline")
        return [
            template.render(
                language=source.language,
                file_name=source.name,
                content=chunk,
                part=position,
                parts=len(chunks),
            )
            for position, chunk in enumerate(chunks, start=1)
        ]

    def polish_request(self, source: SourceFile, outline: str) -> CompletionRequest:
        return self._prompts.get("summarize_polish").render(
            language=source.language, file_name=source.name, outline=outline
        )

    async def summarize_code(self, source: SourceFile) -> Artifact:
        """Two-phase summary of one file"""
        if not source.content.strip():
            raise SourceError(f"empty source file: {source.path}")
        try:
            outlines = await asyncio.gather(
                *(
                    self._completion.complete(request)
                    for request in self.outline_requests(source)
                )
            )
            outline = OUTLINE_SEPARATOR.join(o.strip() for o in outlines)
            polished = await self._completion.complete(
                self.polish_request(source, outline)
            )
            summary = polished.strip()
        except ProviderError as e:
            raise type(e)(f"{source.path}: {e.message}", e.digest) from e
        if not summary:
            raise ProviderContentError(
                f"{source.path}: provider returned an empty summary"
            )
        return Artifact.create(
            layer_index=0,
            artifact_type=CODE_ARTIFACT_TYPE,
            title=source.stem,
            body=summary,
            source_path=source.path,
        )

    async def summarize_all(
        self, sources: Sequence[SourceFile], skip_failed: bool = False
    ) -> Layer:
        """Summarize every file concurrently; the layer is ordered by path"""
        ordered = sorted(sources, key=lambda s: s.path)
        results = await asyncio.gather(
            *(self.summarize_code(s) for s in ordered), return_exceptions=True
        )
        artifacts: List[Artifact] = []
        for source, result in zip(ordered, results):
            if isinstance(result, BaseException):
                if skip_failed and isinstance(result, (ProviderError, SourceError)):
                    logger.warning(f"Skipping {source.path}: {result}")
                    continue
                raise result
            artifacts.append(result)
        logger.info(f"Summarized {len(artifacts)} of {len(ordered)} source files")
        return Layer(index=0, artifact_type=CODE_ARTIFACT_TYPE, artifacts=artifacts)
