"""
Deterministic offline providers

Completion: canned responses keyed by request digest. Without a canned
response the stub is built from the digest and the words after the last
'---' line of the user prompt; a 'Target count: N' line turns it into a
numbered list of N generation items.

Embedding: token-hash bag of words. Each lower-cased alphanumeric token
adds 1 to bucket blake2b(token) mod dim; the vector is L2-normalized.
"""
import hashlib
import json
import logging
import math
import re
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from ...application.interfaces.providers import CompletionProvider, EmbeddingProvider
from ...domain.value_objects.completion import CompletionRequest
from ...domain.value_objects.embedding import Embedding

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"[a-z0-9]+")
_WORD_RE = re.compile(r"[A-Za-z0-9_]+")
_COUNT_RE = re.compile(r"^Target count:\s*(\d+)\s*$", re.MULTILINE)
_SECTION_MARK = re.compile(r"^---\s*$", re.MULTILINE)
MAX_STUB_WORDS = 120
MAX_ITEM_WORDS = 60


def source_section(prompt: str) -> str:
    """Text after the last '---' line, or the whole prompt"""
    marks = list(_SECTION_MARK.finditer(prompt))
    return prompt[marks[-1].end():] if marks else prompt


def _split_even(words: List[str], parts: int) -> List[List[str]]:
    size, extra = divmod(len(words), parts)
    chunks = []
    start = 0
    for i in range(parts):
        end = start + size + (1 if i < extra else 0)
        chunks.append(words[start:end])
        start = end
    return chunks


class MockCompletionProvider(CompletionProvider):
    """Canned-or-stub completion provider"""

    def __init__(
        self, responses: Optional[Dict[str, str]] = None, model_name: str = "mock"
    ):
        self._responses: Dict[str, str] = dict(responses or {})
        self._model_name = model_name
        self.calls = 0

    @classmethod
    def from_file(cls, path: str, model_name: str = "mock") -> "MockCompletionProvider":
        """Load canned responses from a JSON object {digest: text}"""
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ValueError(f"Canned responses in {path} must be a JSON object")
        return cls({str(k): str(v) for k, v in data.items()}, model_name=model_name)

    @property
    def identity(self) -> str:
        return f"mock-completion/{self._model_name}"

    def seed(self, request_digest: str, text: str) -> None:
        self._responses[request_digest] = text

    async def complete(self, request: CompletionRequest) -> str:
        self.calls += 1
        request_digest = request.digest()
        canned = self._responses.get(request_digest)
        if canned is not None:
            return canned
        return self.stub(request_digest, request.user_prompt)

    @staticmethod
    def stub(request_digest: str, user_prompt: str) -> str:
        tag = request_digest[:8]
        words = _WORD_RE.findall(source_section(user_prompt))
        count = _COUNT_RE.search(user_prompt)
        if count is None:
            body = " ".join(words[:MAX_STUB_WORDS])
            return f"[{tag}] {body}".strip()
        n = max(1, int(count.group(1)))
        items = []
        for i, chunk in enumerate(_split_even(words, n), start=1):
            chunk = chunk[:MAX_ITEM_WORDS] or words[:MAX_ITEM_WORDS] or [tag]
            title = " ".join(chunk[:4])
            items.append(f"{i}. Title: {title} ({tag}-{i})\nBody: {' '.join(chunk)}")
        return "\n\n".join(items)


class MockEmbeddingProvider(EmbeddingProvider):
    """Token-hash bag-of-words embeddings"""

    def __init__(self, dim: int = 256):
        self.dim = dim
        self.calls = 0

    @property
    def identity(self) -> str:
        return f"mock-embedding/hash-bow-{self.dim}"

    def _bucket(self, token: str) -> int:
        raw = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
        return int.from_bytes(raw, "big") % self.dim

    def vector(self, text: str) -> List[float]:
        values = [0.0] * self.dim
        tokens = _TOKEN_RE.findall(text.lower()) or [text]
        for token in tokens:
            values[self._bucket(token)] += 1.0
        norm = math.sqrt(sum(v * v for v in values))
        return [v / norm for v in values]

    async def embed(self, texts: Sequence[str]) -> List[Embedding]:
        self.calls += 1
        return [Embedding.from_values(self.vector(text)) for text in texts]
