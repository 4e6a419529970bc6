"""
Prompt templates

Each template file has a [system] and a [user] section. Slots are written
{{name}}; rendering fails when a slot has no value.
"""
import logging
import re
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict

from ...domain.exceptions import ArgumentError
from ...domain.value_objects.completion import CompletionRequest

logger = logging.getLogger(__name__)

TEMPLATES_DIR = Path(__file__).parent / "templates"
_SLOT_RE = re.compile(r"\{\{\s*([a-zA-Z_][a-zA-Z0-9_]*)\s*\}\}")
_SECTION_RE = re.compile(r"^\[(system|user)\]\s*$", re.MULTILINE)


class PromptTemplate(BaseModel):
    """A named system/user prompt pair"""
    model_config = ConfigDict(frozen=True)

    name: str
    system: str
    user: str

    @classmethod
    def parse(cls, name: str, text: str) -> "PromptTemplate":
        sections: Dict[str, str] = {}
        marks = list(_SECTION_RE.finditer(text))
        for i, mark in enumerate(marks):
            end = marks[i + 1].start() if i + 1 < len(marks) else len(text)
            sections[mark.group(1)] = text[mark.end():end].strip("\n")
        if "user" not in sections:
            raise ArgumentError(f"Prompt template '{name}' has no [user] section")
        return cls(
            name=name,
            system=sections.get("system", "").strip(),
            user=sections["user"].rstrip(),
        )

    def slots(self) -> set:
        return set(_SLOT_RE.findall(self.system)) | set(_SLOT_RE.findall(self.user))

    def _fill(self, text: str, values: Dict[str, Any]) -> str:
        def replace(match: re.Match) -> str:
            key = match.group(1)
            if key not in values:
                raise ArgumentError(
                    f"Prompt template '{self.name}' needs a value for '{key}'"
                )
            return str(values[key])

        return _SLOT_RE.sub(replace, text)

    def render(
        self, max_tokens: int = 1024, temperature: float = 0.0, **values: Any
    ) -> CompletionRequest:
        """Fill every slot and build a completion request"""
        system = self._fill(self.system, values) or "You are a helpful assistant."
        return CompletionRequest(
            system_prompt=system,
            user_prompt=self._fill(self.user, values),
            max_tokens=max_tokens,
            temperature=temperature,
        )


class PromptLibrary:
    """Loads templates by name from a directory"""

    def __init__(self, directory: Optional[str] = None):
        self.directory = Path(directory) if directory else TEMPLATES_DIR
        self._templates: Dict[str, PromptTemplate] = {}

    def get(self, name: str) -> PromptTemplate:
        if name not in self._templates:
            path = self.directory / f"{name}.txt"
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as e:
                raise ArgumentError(
                    f"Prompt template '{name}' not found in {self.directory}"
                ) from e
            self._templates[name] = PromptTemplate.parse(name, text)
            logger.debug(f"Loaded prompt template {name}")
        return self._templates[name]


@lru_cache(maxsize=1)
def default_library() -> PromptLibrary:
    return PromptLibrary()
