"""Operator command line: play episodes, run evaluation protocols, generate
and score datasets, dump rendered frames, and verify the invariant suites.

Configuration comes from an optional TOML file with flag-level overrides on
the command line; secrets (remote endpoint, API key) come only from the
``VSARENA_ENDPOINT`` / ``VSARENA_API_KEY`` environment variables.

Exit codes: 0 ok, 2 config error, 3 runtime/protocol error, 4 verify failure.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from pathlib import Path

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from .agents import parse_agent_spec
from .core import (
    IllegalActionError,
    UnknownEnvironmentError,
    make,
    registered_envs,
    replay,
    run_episode,
    split_rng,
    verify_reward_structure,
)
from .core.runner import write_trajectory

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_VERIFY = 4


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "rb") as fp:
        return tomllib.load(fp)


def _merged(args: argparse.Namespace, config: dict, key: str, default=None):
    value = getattr(args, key.replace("-", "_"), None)
    if value is not None:
        return value
    return config.get(key, default)


def _resolve_policies(agent_specs: list[str], env_name: str, mode: str) -> list:
    from .harness import oracle_policies

    policies = []
    for spec in agent_specs:
        if spec == "scripted-oracle":
            pair = oracle_policies(env_name)
            policies.append(pair[len(policies) % len(pair)])
            continue
        policies.append(parse_agent_spec(spec, mode=mode))
    for policy in policies:
        if hasattr(policy, "bind"):
            policy.bind(env_name)
    return policies


def cmd_play(args: argparse.Namespace, config: dict) -> int:
    env_name = _merged(args, config, "env")
    if env_name not in registered_envs():
        print(
            f"error: unknown environment {env_name!r}; registered: "
            f"{', '.join(registered_envs())}",
            file=sys.stderr,
        )
        return EXIT_CONFIG
    agent_specs = (_merged(args, config, "agents") or "random,random").split(",")
    games = int(_merged(args, config, "games", 1))
    seed = int(_merged(args, config, "seed", 0))
    mode = _merged(args, config, "mode", "multimodal")
    out_dir = Path(_merged(args, config, "out", "runs"))
    out_dir.mkdir(parents=True, exist_ok=True)
    seed_rng = split_rng(seed, f"play/{env_name}")
    returns: list[tuple[float, ...]] = []
    for game in range(games):
        game_seed = seed_rng.getrandbits(48)
        try:
            policies = _resolve_policies(agent_specs, env_name, mode)
            traj = run_episode(env_name, game_seed, policies)
        except (ValueError, IllegalActionError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        returns.append(traj.returns)
        path = out_dir / f"{env_name}_{game:04d}.jsonl"
        with path.open("w") as fp:
            write_trajectory(traj, fp, participants=agent_specs)
        if args.frames:
            frame_dir = out_dir / f"{env_name}_{game:04d}_frames"
            _dump_frames(env_name, game_seed, traj, frame_dir)
    per_agent = list(zip(*returns))
    print(f"{env_name}: {games} game(s), seed {seed}")
    for i, values in enumerate(per_agent):
        mean = statistics.fmean(values)
        print(f"  agent {i} ({agent_specs[i % len(agent_specs)]}): mean return {mean:.4f}")
    print(f"  trajectories written to {out_dir}/")
    return EXIT_OK


def _dump_frames(env_name: str, seed: int, traj, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    env = make(env_name, seed)
    for t, joint in enumerate([None] + traj.actions):
        if joint is not None:
            env.step(joint)
        obs = env.observe(0)
        (out_dir / f"step_{t:04d}.png").write_bytes(obs.frames[-1])
        if env.terminal:
            break


def cmd_eval(args: argparse.Namespace, config: dict) -> int:
    from .harness import PROTOCOLS, compute_reference, oracle_policies, run_protocol

    env_name = _merged(args, config, "env")
    if env_name not in PROTOCOLS:
        print(
            f"error: no evaluation protocol for {env_name!r}; known: "
            f"{', '.join(sorted(PROTOCOLS))}",
            file=sys.stderr,
        )
        return EXIT_CONFIG
    agent_spec = _merged(args, config, "agent", "random")
    seed = int(_merged(args, config, "seed", 0))
    mode = _merged(args, config, "mode", "multimodal")
    workers = int(_merged(args, config, "workers", 1))
    episodes = _merged(args, config, "episodes")
    out_dir = Path(_merged(args, config, "out", "reports"))

    if agent_spec == "scripted-oracle":
        pair = oracle_policies(env_name)
        counter = {"i": 0}

        def factory():
            policy = pair[counter["i"] % len(pair)]
            counter["i"] += 1
            return policy

    else:
        def factory():
            policy = parse_agent_spec(agent_spec, mode=mode)
            if hasattr(policy, "bind"):
                policy.bind(env_name)
            return policy

    try:
        report = run_protocol(
            env_name,
            factory,
            agent_label=agent_spec,
            seed=seed,
            observation_mode=mode,
            max_workers=workers,
            episodes_override=int(episodes) if episodes else None,
        )
    except Exception as exc:  # protocol failures are runtime errors
        print(f"error: protocol failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    if args.recompute_references:
        for kind in ("random", "oracle"):
            try:
                value = compute_reference(env_name, kind, n=args.reference_episodes, seed=seed + 1)
                report.extra[f"inrepo_{kind}_reference"] = value
            except Exception as exc:
                print(f"note: in-repo {kind} reference unavailable: {exc}")
    print(report.to_table())
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{env_name}_{agent_spec.replace(':', '_').replace('/', '_')}.json"
    path.write_text(report.to_json())
    print(f"report written to {path}")
    return EXIT_OK


def cmd_dataset(args: argparse.Namespace, config: dict) -> int:
    from .dataset import (
        default_recipe,
        generate_dataset,
        read_dataset,
        score_predictions,
        write_dataset,
    )

    if args.dataset_cmd == "gen":
        env_name = _merged(args, config, "env")
        seed = int(_merged(args, config, "seed", 0))
        out_dir = Path(_merged(args, config, "out", "datasets")) / env_name
        try:
            recipe = default_recipe(env_name, include_reveals=not args.exclude_reveals) \
                if env_name == "hanabi" else default_recipe(env_name)
            samples, manifest = generate_dataset(
                env_name, seed=seed, recipe=recipe, render_frames=not args.no_frames
            )
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        write_dataset(samples, manifest, out_dir)
        print(f"{env_name}: {len(samples)} samples written to {out_dir}/")
        print(f"composition: {json.dumps(manifest['composition'])}")
        if manifest.get("deviations"):
            print("deviations recorded in manifest:")
            for dev in manifest["deviations"]:
                print(f"  - {dev}")
        return EXIT_OK

    if args.dataset_cmd == "score":
        data_dir = Path(_merged(args, config, "data"))
        records, _manifest = read_dataset(data_dir)
        with open(args.pred) as fp:
            text = fp.read().strip()
        if text.startswith("["):
            predictions = json.loads(text)
        else:
            by_index = {}
            for line in text.splitlines():
                if line.strip():
                    rec = json.loads(line)
                    by_index[rec["index"]] = rec["token"]
            predictions = [by_index.get(r["index"]) for r in records]
        accuracy = score_predictions(records, predictions)
        print(f"accuracy: {accuracy:.1f}")
        return EXIT_OK
    print("error: dataset subcommand must be gen or score", file=sys.stderr)
    return EXIT_CONFIG


def cmd_render(args: argparse.Namespace, config: dict) -> int:
    env_name = _merged(args, config, "env")
    if env_name not in registered_envs():
        print(f"error: unknown environment {env_name!r}", file=sys.stderr)
        return EXIT_CONFIG
    seed = int(_merged(args, config, "seed", 0))
    steps = int(_merged(args, config, "steps", 10))
    agent_specs = (_merged(args, config, "agents") or "random,random").split(",")
    out_dir = Path(_merged(args, config, "out", "frames")) / f"{env_name}_{seed}"
    policies = _resolve_policies(agent_specs, env_name, "multimodal")
    traj = run_episode(env_name, seed, policies, max_steps=steps)
    _dump_frames(env_name, seed, traj, out_dir)
    print(f"frames written to {out_dir}/")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: dict) -> int:
    from .verify import run_verification

    probes = int(_merged(args, config, "probes", 100))
    failures = run_verification(probes=probes, seed=int(_merged(args, config, "seed", 0)))
    return EXIT_VERIFY if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vsarena",
        description="multi-agent strategic game suite and evaluation harness",
    )
    parser.add_argument("--config", help="TOML config file; flags override it")
    sub = parser.add_subparsers(dest="command", required=True)

    play = sub.add_parser("play", help="run episodes and write JSONL trajectories")
    play.add_argument("--env")
    play.add_argument("--agents", help="comma-separated agent specs, one per seat")
    play.add_argument("--games", type=int)
    play.add_argument("--seed", type=int)
    play.add_argument("--mode", choices=["multimodal", "text-only"])
    play.add_argument("--out")
    play.add_argument("--frames", action="store_true", help="dump per-step frames")

    ev = sub.add_parser("eval", help="run the environment's evaluation protocol")
    ev.add_argument("--env")
    ev.add_argument("--agent", help="agent spec for the policy under test")
    ev.add_argument("--episodes", help="override the protocol's episode count")
    ev.add_argument("--seed", type=int)
    ev.add_argument("--mode", choices=["multimodal", "text-only"])
    ev.add_argument("--workers", type=int)
    ev.add_argument("--out")
    ev.add_argument(
        "--recompute-references",
        action="store_true",
        help="also compute in-repo random/oracle references",
    )
    ev.add_argument("--reference-episodes", type=int, default=30)

    ds = sub.add_parser("dataset", help="generate or score offline datasets")
    ds_sub = ds.add_subparsers(dest="dataset_cmd", required=True)
    gen = ds_sub.add_parser("gen")
    gen.add_argument("--env")
    gen.add_argument("--seed", type=int)
    gen.add_argument("--out")
    gen.add_argument("--no-frames", action="store_true")
    gen.add_argument(
        "--exclude-reveals",
        action="store_true",
        help="hanabi: drop reveal ground truths (predictability-strict recipe)",
    )
    score = ds_sub.add_parser("score")
    score.add_argument("--env")
    score.add_argument("--data", help="dataset directory")
    score.add_argument("--pred", required=True, help="predictions file (JSON/JSONL)")

    rnd = sub.add_parser("render", help="dump rendered frames for an episode")
    rnd.add_argument("--env")
    rnd.add_argument("--seed", type=int)
    rnd.add_argument("--steps", type=int)
    rnd.add_argument("--agents")
    rnd.add_argument("--out")

    ver = sub.add_parser("verify", help="run the invariant verification suites")
    ver.add_argument("--probes", type=int, help="episodes per reward-structure check")
    ver.add_argument("--seed", type=int)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    handlers = {
        "play": cmd_play,
        "eval": cmd_eval,
        "dataset": cmd_dataset,
        "render": cmd_render,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args, config)
    except UnknownEnvironmentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except KeyboardInterrupt:  # pragma: no cover
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
