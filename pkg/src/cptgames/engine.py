"""Experiment orchestration: matchup construction, the step loop, episode
bookkeeping, seeding, and step-record emission.

One run = episodes * steps_per_episode consecutive steps of the same matrix
game.  Episode boundaries never reset any learning state; they only decay
epsilon and group metrics.  Each run is seeded as base_seed + run_index with
independent per-agent RNG streams, so identical configs replay bit-identically
and runs can execute in parallel without interaction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import games, metrics
from .agents import (
    AGENT_KINDS,
    ActionDiagnostics,
    AverageReward,
    LearningConfig,
    ai_select_action,
    ai_update,
    aware_human_action,
    lh_select_action,
    lh_update,
    new_belief_table,
    new_q_table_ai,
    new_q_table_lh,
    update_beliefs,
)
from .cpt import CptParams
from .games import Game, StateEncoder, bin_reference
from .reference import ReferenceModel, compute_v_based, update_ema, update_emaor

NAN = float("nan")


class ConfigError(ValueError):
    """Invalid experiment configuration, raised before any simulation."""


@dataclass(frozen=True)
class ExperimentConfig:
    game: str = "PrisonersDilemma"
    matchup: tuple[str, str] = ("AI", "AI")
    ref_model: ReferenceModel = field(default_factory=ReferenceModel)
    history: int = 0
    episodes: int = 500
    steps_per_episode: int = 100
    runs: int = 30
    base_seed: int = 0
    cpt: CptParams = field(default_factory=CptParams)
    learning: LearningConfig = field(default_factory=LearningConfig)
    window: int = 5000
    ref_bins: int = 5
    classify_tol: float = 0.05
    lh_prospect_center: str = "reference"
    vbased_literal: bool = False

    @property
    def total_steps(self) -> int:
        return self.episodes * self.steps_per_episode

    def validate(self) -> Game:
        """Check the whole config and return the resolved game."""
        try:
            game = games.get(self.game)
        except KeyError as e:
            raise ConfigError(str(e)) from None
        for kind in self.matchup:
            if kind not in AGENT_KINDS:
                raise ConfigError(f"agent kind must be one of {AGENT_KINDS}, got {kind!r}")
        if game.m != 2:
            raise ConfigError(f"step-record schema supports 2x2 games, got m={game.m}")
        if self.history < 0:
            raise ConfigError("history length must be >= 0")
        if self.episodes < 1 or self.steps_per_episode < 1 or self.runs < 1:
            raise ConfigError("episodes, steps_per_episode, and runs must be >= 1")
        if not 0 < self.window <= self.total_steps:
            raise ConfigError("window must lie in [1, total steps]")
        if self.ref_bins < 1:
            raise ConfigError("ref_bins must be >= 1")
        if self.lh_prospect_center not in ("reference", "avg-reward"):
            raise ConfigError("lh_prospect_center must be 'reference' or 'avg-reward'")
        return game


# Per-step tuple layout (run index lives on the log, not the tuple).
STEP_FIELDS = (
    "step",
    "state_r", "state_c",
    "action_r", "action_c",
    "reward_r", "reward_c",
    "ref_r", "ref_c",
    "eps_r", "eps_c",
    "explored_r", "explored_c",
    "eu_r0", "eu_r1", "eu_c0", "eu_c1",
    "cpt_r0", "cpt_r1", "cpt_c0", "cpt_c1",
    "change_r", "change_c",
    "l2_r", "l2_c",
)


@dataclass(frozen=True)
class StepRecord:
    """Row view of one simulation step."""

    step: int
    states: tuple[int, int]
    joint_action: tuple[int, int]
    rewards: tuple[float, float]
    references: tuple[float, float]
    epsilons: tuple[float, float]
    explored: tuple[float, float]
    eu_values: tuple[tuple[float, float], tuple[float, float]]
    cpt_values: tuple[tuple[float, float], tuple[float, float]]
    action_change: tuple[float, float]
    l2: tuple[float, float]

    @classmethod
    def from_tuple(cls, t) -> "StepRecord":
        return cls(
            step=t[0],
            states=(t[1], t[2]),
            joint_action=(t[3], t[4]),
            rewards=(t[5], t[6]),
            references=(t[7], t[8]),
            epsilons=(t[9], t[10]),
            explored=(t[11], t[12]),
            eu_values=((t[13], t[14]), (t[15], t[16])),
            cpt_values=((t[17], t[18]), (t[19], t[20])),
            action_change=(t[21], t[22]),
            l2=(t[23], t[24]),
        )


class RunLog:
    """All step tuples of one seeded run plus identifying metadata."""

    def __init__(self, run_index: int, seed: int, agent_kinds: tuple[str, str],
                 game_name: str, steps_per_episode: int, rows: list):
        self.run_index = run_index
        self.seed = seed
        self.agent_kinds = agent_kinds
        self.game_name = game_name
        self.steps_per_episode = steps_per_episode
        self.rows = rows

    def __len__(self) -> int:
        return len(self.rows)

    def record(self, i: int) -> StepRecord:
        return StepRecord.from_tuple(self.rows[i])

    def window_rows(self, window: int) -> list:
        """The final `window` step tuples (steps len-window .. len-1)."""
        if window > len(self.rows):
            raise ValueError("window exceeds log length")
        return self.rows[len(self.rows) - window:]


@dataclass(frozen=True)
class RunSummary:
    """Window aggregates and classification for one seeded run."""

    run_index: int
    seed: int
    window: int
    policy: tuple[float, float]
    mean_rewards: tuple[float, float]
    change_rate: tuple[float | None, float | None]
    mean_l2: tuple[float | None, float | None]
    max_l2: tuple[float | None, float | None]
    ref_trace: tuple[dict, dict]
    classification: dict

    def to_dict(self) -> dict:
        return {
            "run_index": self.run_index,
            "seed": self.seed,
            "window": self.window,
            "policy": list(self.policy),
            "mean_rewards": list(self.mean_rewards),
            "change_rate": list(self.change_rate),
            "mean_l2": list(self.mean_l2),
            "max_l2": list(self.max_l2),
            "ref_trace": list(self.ref_trace),
            "classification": self.classification,
        }


class _AiDriver:
    kind = "AI"

    def __init__(self, game: Game, side: str, cfg: ExperimentConfig, rng):
        n_states = (game.m * game.m) ** cfg.history
        self.q = new_q_table_ai(n_states, game.m)
        self.avg = AverageReward()
        self.rng = rng
        self.learning = cfg.learning
        self.alpha_q = cfg.learning.alpha_q
        self.reference = NAN  # AI carries no reference point

    def select(self, history_code: int, epsilon: float):
        action = ai_select_action(self.q, history_code, epsilon, self.rng, self.learning)
        return history_code, action, None

    def observe(self, state, own_action, opp_action, own_reward, opp_reward, next_history_code):
        ai_update(self.q, state, own_action, own_reward, next_history_code, self.avg, self.alpha_q)


class _AhDriver:
    kind = "AH"

    def __init__(self, game: Game, side: str, opponent_kind: str, cfg: ExperimentConfig, rng):
        self.game = game
        self.side = side
        self.opponent_kind = opponent_kind
        self.params = cfg.cpt
        self.learning = cfg.learning
        self.rng = rng
        self.model = cfg.ref_model
        self.reference = cfg.ref_model.initial()
        # The anticipated-payoff digest is reference-independent (the
        # opponent valuation is strictly increasing in payoff), so the
        # V-based reference over the raw table is a constant.
        own, opp = game.oriented(side)
        anticipated = []
        for a in range(game.m):
            row = opp[a]
            best_b = max(range(game.m), key=lambda b: row[b])
            anticipated.append(own[a][best_b])
        self._vref = sum(anticipated) / len(anticipated)

    def select(self, history_code: int, epsilon: float):
        action, diag = aware_human_action(
            self.game, self.side, self.opponent_kind, self.reference,
            self.params, self.learning, self.rng,
        )
        return 0, action, diag

    def observe(self, state, own_action, opp_action, own_reward, opp_reward, next_history_code):
        kind = self.model.kind
        if kind == "EMA":
            self.reference = update_ema(self.reference, own_reward, self.model.eta_ref)
        elif kind == "EMAOR":
            self.reference = update_emaor(self.reference, opp_reward, self.model.eta_ref)
        elif kind == "VBased":
            self.reference = self._vref


class _LhDriver:
    kind = "LH"

    def __init__(self, game: Game, side: str, cfg: ExperimentConfig, rng):
        lo, hi = game.payoff_bounds(side)
        self.encoder = StateEncoder(game.m, cfg.history, cfg.ref_bins, lo, hi)
        self.bins = cfg.ref_bins
        self.lo = lo
        self.hi = hi
        n_states = self.encoder.size
        self.q = new_q_table_lh(n_states, game.m)
        self.beliefs = new_belief_table(n_states, game.m)
        self.avg = AverageReward()
        self.rng = rng
        self.params = cfg.cpt
        self.learning = cfg.learning
        self.alpha_q = cfg.learning.alpha_q
        self.model = cfg.ref_model
        self.reference = cfg.ref_model.initial()
        self.center = cfg.lh_prospect_center
        self.vbased_literal = cfg.vbased_literal

    def _state(self, history_code: int) -> int:
        return history_code * self.bins + bin_reference(self.reference, self.lo, self.hi, self.bins)

    def select(self, history_code: int, epsilon: float):
        state = self._state(history_code)
        action, diag = lh_select_action(
            self.q, self.beliefs, state, self.reference, self.avg, self.params,
            self.learning, epsilon, self.rng, self.center,
        )
        return state, action, diag

    def observe(self, state, own_action, opp_action, own_reward, opp_reward, next_history_code):
        # Update order within a step: beliefs at the observed next state,
        # then the reference, then Q.  The observed next state is encoded
        # with the pre-update reference bin; the next selection re-encodes.
        next_state = self._state(next_history_code)
        update_beliefs(self.beliefs, next_state, opp_action, self.learning.eta_b)
        kind = self.model.kind
        if kind == "EMA":
            self.reference = update_ema(self.reference, own_reward, self.model.eta_ref)
        elif kind == "EMAOR":
            self.reference = update_emaor(self.reference, opp_reward, self.model.eta_ref)
        elif kind == "VBased":
            self.reference = compute_v_based(
                self.q[state], self.beliefs[state], literal=self.vbased_literal
            )
        lh_update(self.q, self.beliefs, state, (own_action, opp_action), own_reward,
                  next_state, self.avg, self.alpha_q)


def _make_driver(kind: str, game: Game, side: str, opponent_kind: str,
                 cfg: ExperimentConfig, rng):
    if kind == "AI":
        return _AiDriver(game, side, cfg, rng)
    if kind == "AH":
        return _AhDriver(game, side, opponent_kind, cfg, rng)
    return _LhDriver(game, side, cfg, rng)


def _diag_fields(diag: ActionDiagnostics | None):
    """(eu0, eu1, cpt0, cpt1, change, l2, explored) slots for the record."""
    if diag is None:
        return NAN, NAN, NAN, NAN, NAN, NAN, NAN
    eu0, eu1 = diag.eu_values
    c0, c1 = diag.cpt_values
    eu_arg = 0 if eu0 >= eu1 else 1
    cpt_arg = 0 if c0 >= c1 else 1
    change = 1.0 if eu_arg != cpt_arg else 0.0
    l2 = math.sqrt((c0 - eu0) ** 2 + (c1 - eu1) ** 2)
    return eu0, eu1, c0, c1, change, l2, 1.0 if diag.explored else 0.0


def simulate_run(config: ExperimentConfig, run_index: int) -> RunLog:
    """Execute one seeded run and return its full step log."""
    game = config.validate()
    seed = config.base_seed + run_index
    stream_row, stream_col, _stream_env = np.random.SeedSequence(seed).spawn(3)
    rng_row = np.random.default_rng(stream_row)
    rng_col = np.random.default_rng(stream_col)
    kinds = config.matchup
    row_drv = _make_driver(kinds[0], game, "row", kinds[1], config, rng_row)
    col_drv = _make_driver(kinds[1], game, "col", kinds[0], config, rng_col)

    payoffs = game.payoffs
    m = game.m
    m2 = m * m
    newest_scale = m2 ** (config.history - 1) if config.history > 0 else 0
    epsilon = config.learning.epsilon_init
    eps_min = config.learning.epsilon_min
    eps_decay = config.learning.epsilon_decay
    history_code = 0
    rows = []
    append = rows.append
    step = 0
    for _episode in range(config.episodes):
        for _ in range(config.steps_per_episode):
            s_r, a_r, d_r = row_drv.select(history_code, epsilon)
            s_c, a_c, d_c = col_drv.select(history_code, epsilon)
            r_r, r_c = payoffs[a_r][a_c]
            if config.history > 0:
                next_code = history_code // m2 + (m * a_r + a_c) * newest_scale
            else:
                next_code = 0
            ref_r = row_drv.reference
            ref_c = col_drv.reference
            row_drv.observe(s_r, a_r, a_c, r_r, r_c, next_code)
            col_drv.observe(s_c, a_c, a_r, r_c, r_r, next_code)
            eu_r0, eu_r1, cpt_r0, cpt_r1, chg_r, l2_r, exp_r = _diag_fields(d_r)
            eu_c0, eu_c1, cpt_c0, cpt_c1, chg_c, l2_c, exp_c = _diag_fields(d_c)
            append((
                step,
                s_r, s_c,
                a_r, a_c,
                r_r, r_c,
                ref_r, ref_c,
                epsilon if kinds[0] != "AH" else NAN,
                epsilon if kinds[1] != "AH" else NAN,
                exp_r, exp_c,
                eu_r0, eu_r1, eu_c0, eu_c1,
                cpt_r0, cpt_r1, cpt_c0, cpt_c1,
                chg_r, chg_c,
                l2_r, l2_c,
            ))
            history_code = next_code
            step += 1
        epsilon = max(eps_min, epsilon * eps_decay)
    return RunLog(run_index, seed, kinds, game.name, config.steps_per_episode, rows)


def converged_policy(step_log, window: int) -> tuple[float, float]:
    """Empirical frequency of first-action play per player over the final
    `window` steps."""
    rows = step_log.window_rows(window) if isinstance(step_log, RunLog) else step_log[-window:]
    n = len(rows)
    count_r = 0
    count_c = 0
    for t in rows:
        if t[3] == 0:
            count_r += 1
        if t[4] == 0:
            count_c += 1
    return count_r / n, count_c / n


def _agent_window_stats(rows, col: int):
    values = [t[col] for t in rows]
    return {
        "mean": sum(values) / len(values),
        "min": min(values),
        "max": max(values),
        "final": values[-1],
    }


def summarize_run(log: RunLog, config: ExperimentConfig, game: Game) -> RunSummary:
    """Window aggregates, metric means, and equilibrium classification."""
    rows = log.window_rows(config.window)
    policy = converged_policy(log, config.window)
    n = len(rows)
    mean_rewards = (sum(t[5] for t in rows) / n, sum(t[6] for t in rows) / n)
    change = []
    mean_l2 = []
    max_l2 = []
    for agent in (0, 1):
        if log.agent_kinds[agent] == "AI":
            change.append(None)
            mean_l2.append(None)
            max_l2.append(None)
        else:
            change.append(metrics.cpt_action_change_rate_rows(rows, agent))
            l2_col = 23 + agent
            mean_l2.append(sum(t[l2_col] for t in rows) / n)
            max_l2.append(max(t[l2_col] for t in rows))
    ref_trace = tuple(
        _agent_window_stats(rows, 7 + agent) if log.agent_kinds[agent] != "AI" else
        {"mean": None, "min": None, "max": None, "final": None}
        for agent in (0, 1)
    )
    cls = metrics.classify_equilibrium(policy, game, config.classify_tol)
    return RunSummary(
        run_index=log.run_index,
        seed=log.seed,
        window=config.window,
        policy=policy,
        mean_rewards=mean_rewards,
        change_rate=tuple(change),
        mean_l2=tuple(mean_l2),
        max_l2=tuple(max_l2),
        ref_trace=ref_trace,
        classification=cls.to_dict(),
    )


def iter_runs(config: ExperimentConfig):
    """Yield (RunLog, RunSummary) per run; lets callers stream logs to disk
    without holding every run in memory."""
    game = config.validate()
    for run_index in range(config.runs):
        log = simulate_run(config, run_index)
        yield log, summarize_run(log, config, game)


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    summaries: tuple[RunSummary, ...]
    logs: tuple[RunLog, ...] | None = None


def run_experiment(config: ExperimentConfig, keep_logs: bool = True) -> ExperimentResult:
    """Execute all runs of one experiment cell."""
    summaries = []
    logs = []
    for log, summary in iter_runs(config):
        summaries.append(summary)
        if keep_logs:
            logs.append(log)
    return ExperimentResult(
        config=config,
        summaries=tuple(summaries),
        logs=tuple(logs) if keep_logs else None,
    )
