"""Command-line entry point: single-cell runs, the full experiment grid, the
game catalog, and ad-hoc equilibrium oracle queries.

Grid cells dispatch to a bounded process pool (CPTGAMES_WORKERS overrides the
size); each cell writes its own step log and summary, and a cell failure is
recorded in the manifest without aborting the others.  Re-running a grid with
the same spec and seed rewrites byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import equilibria, games, storage
from .cpt import CptParams
from .engine import ConfigError, ExperimentConfig, iter_runs
from .reference import ADAPTIVE_KINDS, KINDS, ReferenceModel

MATCHUPS = ("AI-AI", "AI-AH", "AI-LH", "AH-AH", "AH-LH", "LH-LH")


def parse_matchup(text: str) -> tuple[str, str]:
    parts = text.split("-")
    if len(parts) != 2:
        raise ConfigError(f"matchup must look like 'AI-LH', got {text!r}")
    return parts[0].upper(), parts[1].upper()


@dataclass(frozen=True)
class GridSpec:
    """One axis list per experiment dimension plus shared run settings."""

    games: tuple[str, ...] = tuple(g.name for g in games.suite())
    matchups: tuple[str, ...] = MATCHUPS
    ref_models: tuple[str, ...] = ADAPTIVE_KINDS
    histories: tuple[int, ...] = (0, 2)
    runs: int = 30
    base_seed: int = 0
    out_dir: str = "out"
    episodes: int = 500
    steps_per_episode: int = 100
    window: int = 5000
    mirror_asymmetric: bool = True

    def validate(self) -> None:
        if not (self.games and self.matchups and self.ref_models and self.histories):
            raise ConfigError("grid axes must be non-empty")
        for name in self.games:
            games.get(name)
        for kind in self.ref_models:
            if kind not in KINDS:
                raise ConfigError(f"unknown reference model {kind!r}")


def cell_config(spec: GridSpec, game: str, matchup: tuple[str, str], ref_kind: str,
                history: int) -> ExperimentConfig:
    return ExperimentConfig(
        game=game,
        matchup=matchup,
        ref_model=ReferenceModel(kind=ref_kind),
        history=history,
        episodes=spec.episodes,
        steps_per_episode=spec.steps_per_episode,
        runs=spec.runs,
        base_seed=spec.base_seed,
        window=spec.window,
    )


def build_cells(spec: GridSpec) -> list[ExperimentConfig]:
    """Expand the grid axes into cell configs, adding the mirrored matchup
    for heterogeneous pairings on asymmetric payoff tables."""
    spec.validate()
    cells = []
    seen = set()

    def add(game, matchup, ref_kind, history):
        key = (game, matchup, ref_kind, history)
        if key not in seen:
            seen.add(key)
            cells.append(cell_config(spec, game, matchup, ref_kind, history))

    for game_name in spec.games:
        game = games.get(game_name)
        for matchup_text in spec.matchups:
            matchup = parse_matchup(matchup_text)
            for ref_kind in spec.ref_models:
                for history in spec.histories:
                    add(game_name, matchup, ref_kind, history)
                    if (
                        spec.mirror_asymmetric
                        and matchup[0] != matchup[1]
                        and not game.is_symmetric()
                    ):
                        add(game_name, (matchup[1], matchup[0]), ref_kind, history)
    return cells


def cell_paths(config: ExperimentConfig) -> tuple[str, str]:
    """(step log, summary) paths relative to the output directory."""
    base = (
        f"{config.game}/n{config.history}/"
        f"{config.matchup[0]}-{config.matchup[1]}/{config.ref_model.kind}"
    )
    return f"{base}/steps.csv", f"{base}/summary.json"


def run_cell(config: ExperimentConfig, out_dir: str) -> dict:
    """Execute one cell, streaming step logs to disk; returns its manifest
    entry."""
    log_rel, summary_rel = cell_paths(config)
    log_path = Path(out_dir) / log_rel
    summary_path = Path(out_dir) / summary_rel
    entry = {
        "fingerprint": storage.config_fingerprint(config),
        "config": storage.config_to_dict(config),
        "files": {"steps": log_rel, "summary": summary_rel},
        "status": "ok",
    }
    try:
        summaries = []
        log_path.parent.mkdir(parents=True, exist_ok=True)
        with open(log_path, "w", newline="\n") as fh:
            fh.write(storage.STEP_HEADER + "\n")
            for log, summary in iter_runs(config):
                prefix = str(log.run_index) + ","
                for row in log.rows:
                    fh.write(prefix + ",".join(storage._cell(x) for x in row) + "\n")
                summaries.append(summary)
        storage.write_summary(summary_path, config, summaries)
    except Exception as e:  # recorded, never fatal to the grid
        entry["status"] = "failed"
        entry["error"] = f"{type(e).__name__}: {e}"
        entry["traceback"] = traceback.format_exc()
    return entry


def _run_cell_job(args):
    return run_cell(*args)


def default_workers() -> int:
    env = os.environ.get("CPTGAMES_WORKERS")
    if env:
        return max(1, int(env))
    return max(1, min(os.cpu_count() or 1, 4))


def run_grid(spec: GridSpec, workers: int | None = None) -> dict:
    """Run every grid cell and write the manifest; returns the manifest."""
    cells = build_cells(spec)
    if workers is None:
        workers = default_workers()
    jobs = [(config, spec.out_dir) for config in cells]
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(_run_cell_job, jobs))
    else:
        entries = [run_cell(*job) for job in jobs]
    entries.sort(key=lambda e: e["files"]["steps"])
    manifest = {
        "schema_version": storage.SCHEMA_VERSION,
        "out_dir": str(spec.out_dir),
        "cells": entries,
        "failed": sum(1 for e in entries if e["status"] != "ok"),
    }
    storage.write_manifest(Path(spec.out_dir) / "manifest.json", manifest)
    return manifest


def _add_run_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--game", default="PrisonersDilemma")
    p.add_argument("--matchup", default="AI-AI", help="row-col agent kinds, e.g. AH-LH")
    p.add_argument("--ref-model", default="EMA", choices=KINDS)
    p.add_argument("--state-history", type=int, default=0)
    p.add_argument("--runs", type=int, default=30)
    p.add_argument("--episodes", type=int, default=500)
    p.add_argument("--steps-per-episode", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--window", type=int, default=5000)
    p.add_argument("--out-dir", default="out")


def _cmd_run(args) -> int:
    config = ExperimentConfig(
        game=args.game,
        matchup=parse_matchup(args.matchup),
        ref_model=ReferenceModel(kind=args.ref_model),
        history=args.state_history,
        episodes=args.episodes,
        steps_per_episode=args.steps_per_episode,
        runs=args.runs,
        base_seed=args.seed,
        window=args.window,
    )
    config.validate()
    entry = run_cell(config, args.out_dir)
    print(json.dumps({k: entry[k] for k in ("fingerprint", "files", "status")}, indent=2))
    if entry["status"] != "ok":
        print(entry["error"], file=sys.stderr)
        return 1
    summary = storage.read_summary(Path(args.out_dir) / entry["files"]["summary"])
    policies = [r["policy"] for r in summary["runs"]]
    mean_p = sum(p for p, _ in policies) / len(policies)
    mean_q = sum(q for _, q in policies) / len(policies)
    print(f"mean converged policy over {len(policies)} runs: ({mean_p:.4f}, {mean_q:.4f})")
    return 0


def _cmd_grid(args) -> int:
    spec = GridSpec(
        games=tuple(args.games.split(",")) if args.games else GridSpec.games,
        matchups=tuple(args.matchups.split(",")) if args.matchups else GridSpec.matchups,
        ref_models=tuple(args.ref_models.split(",")) if args.ref_models else GridSpec.ref_models,
        histories=tuple(int(h) for h in args.histories.split(",")) if args.histories else GridSpec.histories,
        runs=args.runs,
        base_seed=args.seed,
        out_dir=args.out_dir,
        episodes=args.episodes,
        steps_per_episode=args.steps_per_episode,
        window=args.window,
        mirror_asymmetric=not args.no_mirror,
    )
    manifest = run_grid(spec, workers=args.workers)
    print(f"{len(manifest['cells'])} cells, {manifest['failed']} failed; "
          f"manifest at {Path(spec.out_dir) / 'manifest.json'}")
    return 0 if manifest["failed"] == 0 else 1


def _cmd_oracle(args) -> int:
    game = games.get(args.game)
    params = CptParams()
    if args.concept == "nash":
        result = equilibria.nash_2x2(game)
        out = {
            "game": game.name,
            "points": [{"p": e.p, "q": e.q} for e in result.points],
            "degenerate": result.degenerate,
        }
    elif args.concept == "pt-scan":
        scan = equilibria.pt_best_response_scan(game, args.side, args.reference, params, args.grid)
        out = {
            "game": game.name,
            "side": scan.side,
            "reference": scan.reference,
            "responses": [
                {"opponent_prob": p, "best": sorted(s)}
                for p, s in zip(scan.probs, scan.response_sets)
            ],
        }
    else:  # pt-eb
        refs = tuple(float(x) for x in args.references.split(","))
        cands = equilibria.pt_eb_candidates(game, refs, params, args.grid)
        out = {"game": game.name, "references": list(refs), "candidates": [list(c) for c in cands]}
    print(json.dumps(out, indent=2))
    return 0


def _cmd_catalog(args) -> int:
    text = games.catalog()
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="cptgames", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a single experiment cell")
    _add_run_args(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_grid = sub.add_parser("grid", help="run an experiment grid")
    p_grid.add_argument("--games", default="")
    p_grid.add_argument("--matchups", default="")
    p_grid.add_argument("--ref-models", default="")
    p_grid.add_argument("--histories", default="")
    p_grid.add_argument("--runs", type=int, default=30)
    p_grid.add_argument("--episodes", type=int, default=500)
    p_grid.add_argument("--steps-per-episode", type=int, default=100)
    p_grid.add_argument("--seed", type=int, default=0)
    p_grid.add_argument("--window", type=int, default=5000)
    p_grid.add_argument("--out-dir", default="out")
    p_grid.add_argument("--workers", type=int, default=None)
    p_grid.add_argument("--no-mirror", action="store_true",
                        help="skip mirrored duplicates of asymmetric heterogeneous cells")
    p_grid.set_defaults(func=_cmd_grid)

    p_oracle = sub.add_parser("oracle", help="equilibrium oracle queries")
    p_oracle.add_argument("concept", choices=("nash", "pt-scan", "pt-eb"))
    p_oracle.add_argument("--game", required=True)
    p_oracle.add_argument("--side", default="row", choices=("row", "col"))
    p_oracle.add_argument("--reference", type=float, default=0.0)
    p_oracle.add_argument("--references", default="0,0")
    p_oracle.add_argument("--grid", type=int, default=201)
    p_oracle.set_defaults(func=_cmd_oracle)

    p_cat = sub.add_parser("catalog", help="export the game suite as JSON")
    p_cat.add_argument("--out", default="")
    p_cat.set_defaults(func=_cmd_catalog)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
