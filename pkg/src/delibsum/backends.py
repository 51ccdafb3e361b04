"""Model backends behind the wire protocol, plus deterministic mocks.

All translation and summarisation runs through two HTTP endpoints with
JSON bodies (UTF-8, exact field names):

    POST /v1/translate   {"text", "source", "target"} -> {"text"}
    POST /v1/summarize   {"text"}                     -> {"summary"}

Non-2xx responses carry {"error": string}. No model code lives in this
package; a backend is configuration. Endpoints of the form
``mock:identity``, ``mock:reverse`` and ``mock:lead-k?k=N`` select
in-process deterministic stand-ins used by tests and demo runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from urllib.parse import parse_qs, urlsplit

import httpx

__all__ = [
    "BackendDescriptor",
    "BackendError",
    "TransportError",
    "HttpBackend",
    "MockBackend",
    "BackendPool",
    "make_backend",
]

KIND_TRANSLATOR = "translator"
KIND_SUMMARIZER = "summarizer"


class BackendError(Exception):
    """Terminal backend failure (error payload, empty output, bad config)."""


class TransportError(Exception):
    """Retryable transport-level failure; may carry the failing chunk index."""

    def __init__(self, message: str, chunk_index: int | None = None):
        super().__init__(message)
        self.chunk_index = chunk_index


@dataclass(frozen=True)
class BackendDescriptor:
    backend_id: str
    kind: str
    endpoint: str
    model_label: str
    max_input_chars: int = 4_000
    timeout_ms: int = 30_000

    def __post_init__(self):
        if self.kind not in (KIND_TRANSLATOR, KIND_SUMMARIZER):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.max_input_chars < 1:
            raise ValueError("max_input_chars must be >= 1")
        if self.timeout_ms < 1:
            raise ValueError("timeout_ms must be >= 1")

    def to_dict(self) -> dict:
        return {
            "backend_id": self.backend_id,
            "kind": self.kind,
            "endpoint": self.endpoint,
            "model_label": self.model_label,
            "max_input_chars": self.max_input_chars,
            "timeout_ms": self.timeout_ms,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "BackendDescriptor":
        return cls(
            backend_id=raw["backend_id"],
            kind=raw["kind"],
            endpoint=raw["endpoint"],
            model_label=raw.get("model_label", raw["backend_id"]),
            max_input_chars=int(raw.get("max_input_chars", 4_000)),
            timeout_ms=int(raw.get("timeout_ms", 30_000)),
        )


class HttpBackend:
    """Client for one backend server speaking the wire protocol."""

    def __init__(self, descriptor: BackendDescriptor, client: httpx.Client | None = None):
        self.descriptor = descriptor
        self._client = client or httpx.Client()
        self.calls: list[dict] = []

    def _post(self, path: str, payload: dict) -> dict:
        url = self.descriptor.endpoint.rstrip("/") + path
        try:
            response = self._client.post(
                url, json=payload, timeout=self.descriptor.timeout_ms / 1000.0
            )
        except httpx.TransportError as exc:
            raise TransportError(f"{self.descriptor.backend_id}: {exc}") from exc
        if response.status_code // 100 != 2:
            try:
                message = response.json().get("error", response.text)
            except ValueError:
                message = response.text
            raise BackendError(f"{self.descriptor.backend_id}: {message}")
        return response.json()

    def translate(self, text: str, source: str, target: str) -> str:
        self.calls.append({"op": "translate", "text": text, "source": source, "target": target})
        body = self._post("/v1/translate", {"text": text, "source": source, "target": target})
        return body["text"]

    def summarize(self, text: str) -> str:
        self.calls.append({"op": "summarize", "text": text})
        body = self._post("/v1/summarize", {"text": text})
        return body["summary"]


_SENTENCE_SPLIT = re.compile(r"(?<=[.!?…])\s+")


class MockBackend:
    """Deterministic in-process backend, selected by a mock: endpoint.

    identity returns its input unchanged; reverse returns the reversed
    string (an involution, so forward+backward round-trips to the input);
    lead-k summarises by taking the first k sentences.
    """

    def __init__(self, descriptor: BackendDescriptor, name: str, k: int = 1):
        self.descriptor = descriptor
        self.name = name
        self.k = k
        self.calls: list[dict] = []

    def translate(self, text: str, source: str, target: str) -> str:
        self.calls.append({"op": "translate", "text": text, "source": source, "target": target})
        if self.name == "identity":
            return text
        if self.name == "reverse":
            return text[::-1]
        raise BackendError(f"mock {self.name!r} does not translate")

    def summarize(self, text: str) -> str:
        self.calls.append({"op": "summarize", "text": text})
        if self.name == "identity":
            return text
        if self.name == "lead-k":
            sentences = _SENTENCE_SPLIT.split(text.strip())
            return " ".join(sentences[: self.k])
        raise BackendError(f"mock {self.name!r} does not summarize")


def make_backend(descriptor: BackendDescriptor, client: httpx.Client | None = None):
    """Instantiate the backend an endpoint names; mock: endpoints stay
    in-process."""
    if descriptor.endpoint.startswith("mock:"):
        spec = descriptor.endpoint[len("mock:") :]
        parts = urlsplit(spec)
        name = parts.path
        if name == "identity":
            return MockBackend(descriptor, "identity")
        if name == "reverse":
            return MockBackend(descriptor, "reverse")
        if name == "lead-k":
            params = parse_qs(parts.query)
            k = int(params.get("k", ["1"])[0])
            if k < 1:
                raise BackendError(f"{descriptor.backend_id}: lead-k needs k >= 1")
            return MockBackend(descriptor, "lead-k", k=k)
        raise BackendError(f"{descriptor.backend_id}: unknown mock {name!r}")
    return HttpBackend(descriptor, client=client)


class BackendPool:
    """Memoised backend instances, one per backend_id, sharing one HTTP
    client. Lets a run (and its tests) observe per-backend call logs."""

    def __init__(self, client: httpx.Client | None = None):
        self._client = client
        self._backends: dict[str, object] = {}

    def get(self, descriptor: BackendDescriptor):
        backend = self._backends.get(descriptor.backend_id)
        if backend is None:
            backend = make_backend(descriptor, client=self._client)
            self._backends[descriptor.backend_id] = backend
        return backend
