"""External decision-makers over a wire protocol.

Requests carry the environment name, step index, base64 PNG frames (omitted
in text-only mode), the text observation, the legal token set, and the
request kind (act or predict).  The reply is ``{"token": "..."}``.  An
unparseable or illegal reply falls back to a configured default policy
(random unless overridden) and the fallback is logged and counted.

Two framings: JSON-over-HTTP POST, and line-delimited JSON over a spawned
subprocess's stdio.
"""

from __future__ import annotations

import base64
import json
import logging
import os
import subprocess

import requests

from ..core.types import Observation
from .base import Policy, RandomPolicy

log = logging.getLogger(__name__)

ENDPOINT_ENV_VAR = "VSARENA_ENDPOINT"
API_KEY_ENV_VAR = "VSARENA_API_KEY"


def build_request(
    env_name: str,
    step: int,
    obs: Observation,
    legal: list[str],
    mode: str = "multimodal",
    kind: str = "act",
) -> dict:
    if mode not in ("multimodal", "text-only"):
        raise ValueError(f"unknown observation mode {mode!r}")
    if kind not in ("act", "predict"):
        raise ValueError(f"unknown request kind {kind!r}")
    payload = {
        "env": env_name,
        "step": step,
        "text": obs.text,
        "legal": list(legal),
        "mode": mode,
        "kind": kind,
    }
    if mode == "multimodal":
        payload["frames"] = [
            base64.b64encode(frame).decode("ascii") for frame in obs.frames
        ]
    return payload


class _RemoteBase(Policy):
    requires = "observation"

    def __init__(self, mode: str = "multimodal", fallback: Policy | None = None):
        self.mode = mode
        self.fallback = fallback or RandomPolicy()
        self.fallback_count = 0
        self._env_name = "unknown"
        self._step = 0

    def bind(self, env_name: str) -> None:
        self._env_name = env_name

    def act(self, obs: Observation, agent, legal, rng):
        payload = build_request(
            self._env_name, self._step, obs, legal, mode=self.mode, kind="act"
        )
        self._step += 1
        token = self._exchange(payload)
        if token in legal:
            return token
        self.fallback_count += 1
        log.warning(
            "remote reply %r not in legal set; falling back to %s",
            token,
            self.fallback.name,
        )
        return self.fallback.act(obs, agent, legal, rng)

    def predict(self, obs: Observation, legal: list[str]) -> str | None:
        payload = build_request(
            self._env_name, self._step, obs, legal, mode=self.mode, kind="predict"
        )
        token = self._exchange(payload)
        return token

    def _exchange(self, payload: dict) -> str | None:
        raise NotImplementedError


class RemoteHTTPPolicy(_RemoteBase):
    """POSTs each request to an HTTP endpoint with bounded retries."""

    name = "remote-http"

    def __init__(
        self,
        endpoint: str | None = None,
        mode: str = "multimodal",
        timeout: float = 30.0,
        retries: int = 2,
        api_key: str | None = None,
        fallback: Policy | None = None,
    ):
        super().__init__(mode=mode, fallback=fallback)
        self.endpoint = endpoint or os.environ.get(ENDPOINT_ENV_VAR)
        if not self.endpoint:
            raise ValueError(
                f"no endpoint given and {ENDPOINT_ENV_VAR} is not set"
            )
        self.timeout = timeout
        self.retries = retries
        self.api_key = api_key or os.environ.get(API_KEY_ENV_VAR)

    def _exchange(self, payload: dict) -> str | None:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        last_error: Exception | None = None
        for attempt in range(self.retries + 1):
            try:
                response = requests.post(
                    self.endpoint, json=payload, headers=headers,
                    timeout=self.timeout,
                )
                response.raise_for_status()
                return response.json().get("token")
            except (requests.RequestException, ValueError) as exc:
                last_error = exc
                log.warning("remote call attempt %d failed: %s", attempt + 1, exc)
        log.error("remote endpoint unreachable after retries: %s", last_error)
        return None


class RemoteStdioPolicy(_RemoteBase):
    """Line-delimited JSON over a subprocess's stdin/stdout."""

    name = "remote-stdio"

    def __init__(self, command: list[str], mode: str = "multimodal",
                 fallback: Policy | None = None):
        super().__init__(mode=mode, fallback=fallback)
        self.process = subprocess.Popen(
            command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            bufsize=1,
        )

    def _exchange(self, payload: dict) -> str | None:
        try:
            assert self.process.stdin and self.process.stdout
            self.process.stdin.write(json.dumps(payload) + "\n")
            self.process.stdin.flush()
            line = self.process.stdout.readline()
            if not line:
                return None
            return json.loads(line).get("token")
        except (OSError, ValueError) as exc:
            log.warning("stdio agent exchange failed: %s", exc)
            return None

    def close(self) -> None:
        if self.process.poll() is None:
            self.process.terminate()
            try:
                self.process.wait(timeout=5)
            except subprocess.TimeoutExpired:  # pragma: no cover
                self.process.kill()
