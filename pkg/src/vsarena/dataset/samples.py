"""Offline reasoning samples: observation context plus the other agent's
next action, scored under outcome equivalence.

In the grid dilemmas several movement tokens can resolve to the same cell
(walls clamp moves), in which case they produce identical transitions and
are all accepted as correct predictions.  Everywhere else the equivalence
set is the singleton ground truth.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path

from ..core.env import Environment
from ..games.grid import GridEnvBase, MOVE_TOKENS, resolve_move

log = logging.getLogger(__name__)


@dataclass
class ReasoningSample:
    env: str
    index: int
    observer: int  # the predicting agent
    predicted: int  # the agent whose action is the ground truth
    step: int
    seed: int
    pair: str  # generating strategy-pair label
    text: str
    frames: list[bytes] = field(repr=False, default_factory=list)
    frame_paths: list[str] = field(default_factory=list)
    ground_truth: str = ""
    equivalence: list[str] = field(default_factory=list)
    legal: list[str] = field(default_factory=list)

    def to_record(self) -> dict:
        return {
            "index": self.index,
            "env": self.env,
            "observer": self.observer,
            "predicted": self.predicted,
            "step": self.step,
            "seed": self.seed,
            "pair": self.pair,
            "text": self.text,
            "ground_truth": self.ground_truth,
            "equivalence": self.equivalence,
            "legal": self.legal,
            "frames": self.frame_paths,
        }


def equivalence_set(env: Environment, agent: int, ground_truth: str) -> list[str]:
    """All tokens with the same transition outcome as the ground truth.

    Grid dilemmas: movement tokens resolving the agent to the same cell (the
    respawn draws and every event depend only on the joint positions, so
    equal cells imply identical transitions).  Other games: the singleton.
    """
    if isinstance(env, GridEnvBase):
        target = resolve_move(env.players[agent], ground_truth)
        return sorted(
            token
            for token in MOVE_TOKENS
            if resolve_move(env.players[agent], token) == target
        )
    return [ground_truth]


def score_predictions(
    samples: list[ReasoningSample] | list[dict],
    predictions: list[str | None],
) -> float:
    """Accuracy in [0, 100]: predictions inside their equivalence set.

    Missing predictions (None or short list) count as wrong and are logged.
    """
    if not samples:
        raise ValueError("no samples to score")
    hits = 0
    missing = 0
    for i, sample in enumerate(samples):
        equivalence = (
            sample["equivalence"] if isinstance(sample, dict) else sample.equivalence
        )
        token = predictions[i] if i < len(predictions) else None
        if token is None:
            missing += 1
            continue
        if token in equivalence:
            hits += 1
    if missing:
        log.warning("%d/%d predictions missing; counted wrong", missing, len(samples))
    return 100.0 * hits / len(samples)


def random_predictor(
    samples: list[ReasoningSample] | list[dict], rng: random.Random
) -> list[str]:
    """The random baseline: uniform over each sample's legal token set."""
    out = []
    for sample in samples:
        legal = sample["legal"] if isinstance(sample, dict) else sample.legal
        out.append(legal[rng.randrange(len(legal))])
    return out


# -- disk format -----------------------------------------------------------


def write_dataset(
    samples: list[ReasoningSample], manifest: dict, out_dir: str | Path
) -> Path:
    """``manifest.json`` + ``samples.jsonl`` + ``frames/*.png``."""
    out = Path(out_dir)
    frames_dir = out / "frames"
    frames_dir.mkdir(parents=True, exist_ok=True)
    for sample in samples:
        sample.frame_paths = []
        for j, frame in enumerate(sample.frames):
            name = f"frames/s{sample.index:04d}_f{j}.png"
            (out / name).write_bytes(frame)
            sample.frame_paths.append(name)
    with (out / "samples.jsonl").open("w") as fp:
        for sample in samples:
            fp.write(json.dumps(sample.to_record()) + "\n")
    with (out / "manifest.json").open("w") as fp:
        json.dump(manifest, fp, indent=2)
    return out


def read_dataset(path: str | Path) -> tuple[list[dict], dict]:
    root = Path(path)
    with (root / "manifest.json").open() as fp:
        manifest = json.load(fp)
    records = []
    with (root / "samples.jsonl").open() as fp:
        for line in fp:
            if line.strip():
                records.append(json.loads(line))
    return records, manifest
