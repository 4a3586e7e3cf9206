"""Behavior counters for the mixed-motive games.

Aggregates typed trajectory events into the social-behavior dimensions:
cooperation/defection coin collections, apple/monster outcomes, and block
meetings.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ..core.types import Trajectory

#: env -> list of (label, event kind, actor index or None for shared events)
_COUNTER_LAYOUT: dict[str, list[tuple[str, str, int | None]]] = {
    "coin": [
        ("cooperation(red)", "own-coin", 0),
        ("defection(red)", "cross-coin", 0),
        ("cooperation(blue)", "own-coin", 1),
        ("defection(blue)", "cross-coin", 1),
    ],
    "hunt": [
        ("apples(red)", "apple", 0),
        ("apples(blue)", "apple", 1),
        ("monster-alone(red)", "monster-alone", 0),
        ("monster-alone(blue)", "monster-alone", 1),
        ("joint-defeats", "monster-joint", None),
    ],
    "battle": [
        ("red-block-meetings", "red-block-meet", None),
        ("blue-block-meetings", "blue-block-meet", None),
        ("mismatches", "block-mismatch", None),
    ],
}


def behavior_counters(
    trajectories: Sequence[Trajectory] | Iterable[Trajectory], env_name: str
) -> dict[str, int]:
    """Total event counts across trajectories, keyed by behavior label."""
    try:
        layout = _COUNTER_LAYOUT[env_name]
    except KeyError:
        raise ValueError(
            f"{env_name!r} has no behavior counters (mixed-motive envs only)"
        ) from None
    totals = {label: 0 for label, _, _ in layout}
    for traj in trajectories:
        for step in traj.steps:
            for ev in step.events:
                for label, kind, actor in layout:
                    if ev.kind != kind:
                        continue
                    if actor is None or actor in ev.actors:
                        totals[label] += 1
    return totals
