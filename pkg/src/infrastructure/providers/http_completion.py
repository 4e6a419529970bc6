"""
HTTP completion provider

POSTs {model, system, messages, max_tokens, temperature} to the configured
endpoint and reads the completion text at a JSON pointer in the reply.
"""
import logging
from typing import Any, Dict, Optional

import httpx

from ...application.interfaces.providers import CompletionProvider
from ...domain.exceptions import (
    ProviderAuthError,
    ProviderContentError,
    RetriableProviderError,
)
from ...domain.value_objects.completion import CompletionRequest
from ..config.pipeline_config import ProviderConfig

logger = logging.getLogger(__name__)

AUTH_STATUSES = {401, 403}


def resolve_pointer(document: Any, pointer: str) -> Any:
    """Resolve an RFC 6901 JSON pointer; KeyError when a segment is missing"""
    if pointer in ("", "/"):
        return document
    current = document
    for raw in pointer.lstrip("/").split("/"):
        part = raw.replace("~1", "/").replace("~0", "~")
        if isinstance(current, list):
            try:
                current = current[int(part)]
            except (ValueError, IndexError) as e:
                raise KeyError(pointer) from e
        elif isinstance(current, dict):
            if part not in current:
                raise KeyError(pointer)
            current = current[part]
        else:
            raise KeyError(pointer)
    return current


def build_headers(config: ProviderConfig, api_key: Optional[str]) -> Dict[str, str]:
    headers = {"content-type": "application/json", **config.extra_headers}
    if api_key:
        headers[config.api_key_header] = f"{config.api_key_prefix}{api_key}"
    return headers


def check_status(response: httpx.Response, request_digest: Optional[str]) -> None:
    """Map HTTP status onto provider errors"""
    status = response.status_code
    if status in AUTH_STATUSES:
        raise ProviderAuthError(
            f"Provider rejected credentials (HTTP {status})", request_digest
        )
    if status == 429 or status >= 500:
        raise RetriableProviderError(
            f"Provider unavailable (HTTP {status})", request_digest
        )
    if status >= 400:
        raise ProviderContentError(
            f"Provider refused request (HTTP {status}): {response.text[:200]}",
            request_digest,
        )


class HttpCompletionProvider(CompletionProvider):
    """Completion over a messages-style HTTP API"""

    def __init__(
        self,
        config: ProviderConfig,
        api_key: Optional[str] = None,
        client: Optional[httpx.AsyncClient] = None,
    ):
        self.config = config
        self._client = client or httpx.AsyncClient(
            timeout=config.timeout, headers=build_headers(config, api_key)
        )
        self._owns_client = client is None

    @property
    def identity(self) -> str:
        return f"http-completion/{self.config.model_name}"

    def payload(self, request: CompletionRequest) -> Dict[str, Any]:
        return {
            "model": self.config.model_name,
            "system": request.system_prompt,
            "messages": [{"role": "user", "content": request.user_prompt}],
            "max_tokens": request.max_tokens,
            "temperature": request.temperature,
        }

    async def complete(self, request: CompletionRequest) -> str:
        request_digest = request.digest()
        try:
            response = await self._client.post(
                self.config.endpoint, json=self.payload(request)
            )
        except httpx.HTTPError as e:
            raise RetriableProviderError(
                f"Transport failure: {e}", request_digest
            ) from e
        check_status(response, request_digest)
        try:
            text = resolve_pointer(response.json(), self.config.response_pointer)
        except (ValueError, KeyError) as e:
            raise ProviderContentError(
                f"No completion text at {self.config.response_pointer}", request_digest
            ) from e
        if not isinstance(text, str) or not text.strip():
            raise ProviderContentError(
                "Provider returned an empty completion", request_digest
            )
        return text

    async def aclose(self) -> None:
        if self._owns_client:
            await self._client.aclose()
