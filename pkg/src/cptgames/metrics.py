"""Post-hoc diagnostics over step logs: CPT action-change rate, CPT/EU L2
distance, joint-action frequencies, per-episode series, and equilibrium
classification.  Pure functions over immutable logs."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .games import Game

# Column offsets in the engine's step tuples (see engine.STEP_FIELDS).
_COL_ACTION = 3
_COL_EXPLORED = 11
_COL_EU = 13
_COL_CPT = 17
_COL_L2 = 23

EU_TIE_EXCLUSION = 1e-8


def cpt_action_change_rate_rows(rows, agent: int, exclusion: float = EU_TIE_EXCLUSION):
    """Fraction of exploit steps where the CPT argmax deviates from the EU
    argmax, excluding steps whose top-two EU values differ by less than
    `exclusion` (numerical ties carry no preference signal)."""
    eu0_col = _COL_EU + 2 * agent
    cpt0_col = _COL_CPT + 2 * agent
    explored_col = _COL_EXPLORED + agent
    eligible = 0
    changed = 0
    for t in rows:
        if t[explored_col] != 0.0:  # exploration steps and untracked agents
            continue
        eu0 = t[eu0_col]
        eu1 = t[eu0_col + 1]
        if abs(eu0 - eu1) < exclusion:
            continue
        eligible += 1
        eu_arg = 0 if eu0 >= eu1 else 1
        cpt_arg = 0 if t[cpt0_col] >= t[cpt0_col + 1] else 1
        if eu_arg != cpt_arg:
            changed += 1
    return changed / eligible if eligible else 0.0


def cpt_action_change_rate(step_log, exclusion: float = EU_TIE_EXCLUSION):
    """Per-agent change rates for a RunLog; None for agents without CPT
    diagnostics (the AI)."""
    rates = []
    for agent in (0, 1):
        if step_log.agent_kinds[agent] == "AI":
            rates.append(None)
        else:
            rates.append(cpt_action_change_rate_rows(step_log.rows, agent, exclusion))
    return tuple(rates)


def cpt_eu_l2(step_record, agent: int) -> float:
    """Euclidean distance between the agent's CPT and EU action-value
    vectors at one step."""
    eu = step_record.eu_values[agent]
    cpt = step_record.cpt_values[agent]
    return math.sqrt(sum((c - e) ** 2 for c, e in zip(cpt, eu)))


@dataclass(frozen=True)
class Classification:
    """Nearest documented equilibrium of a converged policy, or anomalous."""

    policy: tuple[float, float]
    anomalous: bool
    point: tuple[float, float] | None
    concepts: tuple[str, ...]
    distance: float

    def to_dict(self) -> dict:
        return {
            "policy": list(self.policy),
            "anomalous": self.anomalous,
            "point": list(self.point) if self.point is not None else None,
            "concepts": list(self.concepts),
            "distance": self.distance,
        }


def classify_equilibrium(policy, game: Game, tol: float = 0.05) -> Classification:
    """Match a converged policy against the game's documented equilibria by
    Chebyshev distance; outside `tol` of every point it is anomalous."""
    if tol <= 0:
        raise ValueError("classification tolerance must be > 0")
    p, q = policy
    best_point = None
    best_dist = math.inf
    for eq in game.equilibria:
        d = max(abs(p - eq.p), abs(q - eq.q))
        if d < best_dist:
            best_dist = d
            best_point = (eq.p, eq.q)
    if best_point is None or best_dist > tol:
        return Classification((p, q), True, None, (), best_dist)
    concepts = tuple(
        eq.concept for eq in game.equilibria if (eq.p, eq.q) == best_point
    )
    return Classification((p, q), False, best_point, concepts, best_dist)


def joint_action_frequencies(step_log, window: int):
    """Empirical distribution over the four joint actions in the final
    window; rows index the row player's action."""
    rows = step_log.window_rows(window) if hasattr(step_log, "window_rows") else step_log[-window:]
    counts = [[0, 0], [0, 0]]
    for t in rows:
        counts[t[_COL_ACTION]][t[_COL_ACTION + 1]] += 1
    n = len(rows)
    return [[counts[i][j] / n for j in range(2)] for i in range(2)]


@dataclass(frozen=True)
class MetricSeries:
    """A per-episode metric aggregated within runs and across them.

    per_run[r][e] is the mean over episode e's steps in run r; mean/std are
    computed across runs per episode (population std)."""

    name: str
    per_run: tuple[tuple[float, ...], ...]
    mean: tuple[float, ...]
    std: tuple[float, ...]

    @property
    def episodes(self) -> int:
        return len(self.mean)


def episode_means(log, column: int) -> tuple[float, ...]:
    """Mean of one step-tuple column per episode for a single run."""
    spe = log.steps_per_episode
    rows = log.rows
    out = []
    for start in range(0, len(rows), spe):
        chunk = rows[start:start + spe]
        out.append(sum(t[column] for t in chunk) / len(chunk))
    return tuple(out)


def metric_series(name: str, logs, column: int) -> MetricSeries:
    """Cross-run per-episode series of one step-tuple column."""
    per_run = tuple(episode_means(log, column) for log in logs)
    episodes = len(per_run[0])
    if any(len(r) != episodes for r in per_run):
        raise ValueError("runs disagree on episode count")
    mean = []
    std = []
    n = len(per_run)
    for e in range(episodes):
        vals = [per_run[r][e] for r in range(n)]
        mu = sum(vals) / n
        mean.append(mu)
        std.append(math.sqrt(sum((v - mu) ** 2 for v in vals) / n))
    return MetricSeries(name, per_run, tuple(mean), tuple(std))
