"""Configuration-driven HTTP backend for live translation services."""

from __future__ import annotations

import asyncio
import logging
import os
import re
import time
from typing import Any

import httpx

from tgbi.config import load_env
from tgbi.corpus import EecSentence
from tgbi.errors import BackendConfigError
from tgbi.translators.base import BackendDescriptor, BaseTranslator

logger = logging.getLogger(__name__)

_ENV_PLACEHOLDER = re.compile(r"\$\{([A-Za-z_][A-Za-z0-9_]*)\}")
TEXT_PLACEHOLDER = "{text}"


class RateLimiter:
    """Spaces request starts at least 1/rate seconds apart."""

    def __init__(self, rate_per_second: float) -> None:
        self._min_interval = 1.0 / rate_per_second
        self._last_request_time = 0.0
        self._lock = asyncio.Lock()

    async def wait_for_slot(self) -> None:
        async with self._lock:
            now = time.monotonic()
            elapsed = now - self._last_request_time
            if elapsed < self._min_interval:
                await asyncio.sleep(self._min_interval - elapsed)
            self._last_request_time = time.monotonic()


def extract_path(payload: Any, path: str) -> Any:
    """Follow a dotted path; integer segments index into lists."""
    current = payload
    for segment in path.split("."):
        if isinstance(current, list):
            current = current[int(segment)]
        else:
            current = current[segment]
    return current


class HttpTranslator(BaseTranslator):
    """
    Sends one sentence per request to a vendor endpoint.

    endpoint_config keys:
        url, method ("GET"/"POST"), headers, params, json or form (body fields),
        response_path (dotted path to the output string), timeout.
    String values may use {text} for the source sentence and ${ENV_NAME}
    for secrets read from the environment.
    """

    def __init__(self, descriptor: BackendDescriptor, transport: httpx.AsyncBaseTransport | None = None) -> None:
        super().__init__(descriptor)
        config = descriptor.endpoint_config
        for key in ("url", "response_path"):
            if key not in config:
                raise BackendConfigError(descriptor.backend_id, f"HttpAdapter backends need endpoint_config.{key}")
        self.url: str = config["url"]
        self.method: str = config.get("method", "POST").upper()
        self.response_path: str = config["response_path"]
        self.limiter = RateLimiter(descriptor.rate_limit)
        self._transport = transport
        self._client: httpx.AsyncClient | None = None
        load_env()
        # Resolve secrets up front so a missing variable fails before any request
        self._headers = self._expand(config.get("headers", {}), text=None)

    def _expand(self, value: Any, text: str | None) -> Any:
        if isinstance(value, dict):
            return {k: self._expand(v, text) for k, v in value.items()}
        if isinstance(value, list):
            return [self._expand(v, text) for v in value]
        if not isinstance(value, str):
            return value

        def secret(match: re.Match[str]) -> str:
            name = match.group(1)
            resolved = os.getenv(name)
            if resolved is None:
                raise BackendConfigError(self.backend_id, f"environment variable {name} is not set")
            return resolved

        expanded = _ENV_PLACEHOLDER.sub(secret, value)
        if text is not None:
            expanded = expanded.replace(TEXT_PLACEHOLDER, text)
        return expanded

    def _get_client(self) -> httpx.AsyncClient:
        if self._client is None:
            timeout = float(self.descriptor.endpoint_config.get("timeout", 30.0))
            self._client = httpx.AsyncClient(timeout=timeout, transport=self._transport, headers=self._headers)
        return self._client

    async def translate(self, sentence: EecSentence, source: str) -> str:
        config = self.descriptor.endpoint_config
        request: dict[str, Any] = {"params": self._expand(config.get("params"), source)}
        if "json" in config:
            request["json"] = self._expand(config["json"], source)
        elif "form" in config:
            request["data"] = self._expand(config["form"], source)

        await self.limiter.wait_for_slot()
        response = await self._get_client().request(self.method, self.url, **request)
        response.raise_for_status()
        try:
            output = extract_path(response.json(), self.response_path)
        except (KeyError, IndexError, ValueError, TypeError) as e:
            raise ValueError(f"response has no {self.response_path!r}: {e}") from e
        if not isinstance(output, str) or not output.strip():
            raise ValueError(f"empty translation at {self.response_path!r}")
        return output.strip()

    async def aclose(self) -> None:
        if self._client is not None:
            await self._client.aclose()
            self._client = None
