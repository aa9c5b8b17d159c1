"""File formats for experiment cells: CSV step logs, JSON summaries, and the
grid manifest.  All serialization is byte-deterministic for a given config
and seed (floats via repr, JSON with sorted keys)."""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path

from .engine import ExperimentConfig, RunLog, RunSummary

SCHEMA_VERSION = 1

STEP_HEADER = (
    "run,step,state_r,state_c,action_r,action_c,reward_r,reward_c,"
    "ref_r,ref_c,eps_r,eps_c,explored_r,explored_c,"
    "eu_r0,eu_r1,eu_c0,eu_c1,cpt_r0,cpt_r1,cpt_c0,cpt_c1,"
    "change_r,change_c,l2_r,l2_c"
)

_INT_SLOTS = {0, 1, 2, 3, 4}  # step, states, actions


def _cell(x) -> str:
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return repr(x)


def config_to_dict(config: ExperimentConfig) -> dict:
    """The semantically meaningful config fields, canonically ordered."""
    return {
        "game": config.game,
        "matchup": list(config.matchup),
        "ref_model": {
            "kind": config.ref_model.kind,
            "eta_ref": config.ref_model.eta_ref,
            "fixed_value": config.ref_model.fixed_value,
        },
        "history": config.history,
        "episodes": config.episodes,
        "steps_per_episode": config.steps_per_episode,
        "runs": config.runs,
        "base_seed": config.base_seed,
        "window": config.window,
        "ref_bins": config.ref_bins,
        "classify_tol": config.classify_tol,
        "lh_prospect_center": config.lh_prospect_center,
        "vbased_literal": config.vbased_literal,
        "cpt": {
            "alpha": config.cpt.alpha,
            "beta": config.cpt.beta,
            "lam": config.cpt.lam,
            "gamma": config.cpt.gamma,
            "delta": config.cpt.delta,
        },
        "learning": {
            "alpha_q": config.learning.alpha_q,
            "epsilon_init": config.learning.epsilon_init,
            "epsilon_min": config.learning.epsilon_min,
            "epsilon_decay": config.learning.epsilon_decay,
            "tau": config.learning.tau,
            "temperature": config.learning.temperature,
            "eta_b": config.learning.eta_b,
        },
    }


def config_fingerprint(config: ExperimentConfig) -> str:
    """Stable hash of the canonicalized config."""
    payload = json.dumps(config_to_dict(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def write_step_log(path, runs) -> None:
    """Write (RunLog, ...) iterables as one CSV per cell, run column first."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(STEP_HEADER + "\n")
        for log in runs:
            prefix = str(log.run_index) + ","
            for row in log.rows:
                fh.write(prefix + ",".join(_cell(x) for x in row) + "\n")


def read_step_log(path) -> list[list[tuple]]:
    """Parse a step-log CSV back into per-run row lists (ordered by run)."""
    per_run: dict[int, list] = {}
    with open(path) as fh:
        header = fh.readline().strip()
        if header != STEP_HEADER:
            raise ValueError(f"unexpected step-log header in {path}")
        for line in fh:
            parts = line.rstrip("\n").split(",")
            run = int(parts[0])
            row = tuple(
                int(v) if i in _INT_SLOTS else float(v)
                for i, v in enumerate(parts[1:])
            )
            per_run.setdefault(run, []).append(row)
    return [per_run[k] for k in sorted(per_run)]


def summary_payload(config: ExperimentConfig, summaries) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "fingerprint": config_fingerprint(config),
        "config": config_to_dict(config),
        "runs": [s.to_dict() for s in summaries],
    }


def write_summary(path, config: ExperimentConfig, summaries) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(summary_payload(config, summaries), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_summary(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def write_manifest(path, manifest: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_manifest(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
