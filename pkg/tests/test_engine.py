"""Unit tests for the experiment engine: configuration, determinism, state
ids, reward conservation, episode bookkeeping, and run summaries."""

import math

import pytest

from cptgames.agents import LearningConfig
from cptgames.cpt import EU_PARAMS
from cptgames.engine import (
    ConfigError,
    ExperimentConfig,
    RunLog,
    StepRecord,
    converged_policy,
    iter_runs,
    run_experiment,
    simulate_run,
    summarize_run,
)
from cptgames.games import get
from cptgames.reference import ReferenceModel

SMALL = dict(episodes=5, steps_per_episode=20, runs=2, window=20)


def small_config(**overrides):
    merged = {**SMALL, **overrides}
    return ExperimentConfig(**merged)


class TestConfigValidation:
    def test_unknown_game(self):
        with pytest.raises(ConfigError):
            small_config(game="Checkers").validate()

    def test_bad_matchup(self):
        with pytest.raises(ConfigError):
            small_config(matchup=("AI", "Robot")).validate()

    def test_window_exceeds_total(self):
        with pytest.raises(ConfigError):
            small_config(window=101).validate()

    def test_rejected_before_simulation(self):
        with pytest.raises(ConfigError):
            run_experiment(small_config(game="Checkers"))

    def test_total_steps(self):
        assert ExperimentConfig().total_steps == 50_000


class TestDeterminism:
    def test_same_seed_bit_identical(self):
        cfg = small_config(game="MatchingPennies", matchup=("AH", "LH"),
                           ref_model=ReferenceModel(kind="EMAOR"), history=2)
        a = simulate_run(cfg, 0)
        b = simulate_run(cfg, 0)
        assert a.rows == b.rows
        assert a.seed == b.seed == cfg.base_seed

    def test_runs_differ(self):
        cfg = small_config(game="MatchingPennies", matchup=("LH", "LH"))
        assert simulate_run(cfg, 0).rows != simulate_run(cfg, 1).rows

    def test_seed_offsets(self):
        cfg = small_config(base_seed=17)
        logs = [log for log, _ in iter_runs(cfg)]
        assert [log.seed for log in logs] == [17, 18]


class TestStepRecords:
    def test_reward_conservation(self):
        cfg = small_config(game="Chicken", matchup=("AI", "LH"), history=2)
        log = simulate_run(cfg, 0)
        game = get("Chicken")
        for i in range(len(log)):
            rec = log.record(i)
            assert rec.rewards == game.payoff(*rec.joint_action)

    def test_state_id_ranges(self):
        cfg = small_config(game="PrisonersDilemma", matchup=("AI", "LH"), history=2)
        log = simulate_run(cfg, 0)
        for i in range(len(log)):
            rec = log.record(i)
            assert 0 <= rec.states[0] < 16        # AI: history only
            assert 0 <= rec.states[1] < 16 * 5    # LH: history x reference bins

    def test_ah_is_stateless(self):
        cfg = small_config(game="StagHunt", matchup=("AH", "AH"), history=2)
        log = simulate_run(cfg, 0)
        assert all(t[1] == 0 and t[2] == 0 for t in log.rows)

    def test_ai_has_no_value_diagnostics(self):
        cfg = small_config(matchup=("AI", "LH"))
        log = simulate_run(cfg, 0)
        rec = log.record(0)
        assert all(math.isnan(v) for v in rec.eu_values[0])
        assert not any(math.isnan(v) for v in rec.eu_values[1])
        assert math.isnan(rec.l2[0])

    def test_lh_reference_bins_move_states(self):
        # PD rewards are negative: the EMA reference leaves bin 2 quickly.
        cfg = small_config(game="PrisonersDilemma", matchup=("LH", "LH"),
                           episodes=20, window=100)
        log = simulate_run(cfg, 0)
        states = {t[1] for t in log.rows}
        assert len(states) > 1

    def test_step_record_round_trip(self):
        cfg = small_config(matchup=("AH", "LH"))
        log = simulate_run(cfg, 0)
        rec = log.record(7)
        assert isinstance(rec, StepRecord)
        assert rec.step == 7
        assert rec.joint_action == (log.rows[7][3], log.rows[7][4])


class TestEpisodeBookkeeping:
    def test_epsilon_decays_per_episode(self):
        cfg = small_config(matchup=("AI", "AI"))
        log = simulate_run(cfg, 0)
        eps = [log.rows[e * 20][9] for e in range(5)]
        assert eps[0] == 0.3
        for a, b in zip(eps, eps[1:]):
            assert b == pytest.approx(a * 0.995)

    def test_epsilon_floor(self):
        cfg = small_config(episodes=50, steps_per_episode=5, window=5,
                           learning=LearningConfig(epsilon_init=0.012, epsilon_min=0.01))
        log = simulate_run(cfg, 0)
        assert log.rows[-1][9] == pytest.approx(0.01, abs=1e-12)

    def test_boundaries_only_decay_epsilon(self):
        # With decay 1.0 an episode boundary is a no-op: 5x20 and 1x100
        # step splits must generate identical step streams.
        learning = LearningConfig(epsilon_decay=1.0)
        cfg_a = small_config(game="MatchingPennies", matchup=("LH", "AI"),
                             learning=learning, history=2)
        cfg_b = small_config(game="MatchingPennies", matchup=("LH", "AI"),
                             learning=learning, history=2,
                             episodes=1, steps_per_episode=100, window=20)
        assert simulate_run(cfg_a, 0).rows == simulate_run(cfg_b, 0).rows


class TestConvergedPolicy:
    def test_all_defect(self):
        rows = [(i, 0, 0, 1, 1, 0.0, 0.0) + (0.0,) * 18 for i in range(100)]
        log = RunLog(0, 0, ("AI", "AI"), "PrisonersDilemma", 10, rows)
        assert converged_policy(log, 50) == (0.0, 0.0)

    def test_alternating(self):
        rows = [(i, 0, 0, i % 2, (i + 1) % 2, 0.0, 0.0) + (0.0,) * 18 for i in range(100)]
        log = RunLog(0, 0, ("AI", "AI"), "MatchingPennies", 10, rows)
        assert converged_policy(log, 100) == (0.5, 0.5)

    def test_window_uses_exact_tail(self):
        # First 60 steps action 0, final 40 steps action 1.
        rows = [(i, 0, 0, 0 if i < 60 else 1, 0, 0.0, 0.0) + (0.0,) * 18 for i in range(100)]
        log = RunLog(0, 0, ("AI", "AI"), "PrisonersDilemma", 10, rows)
        assert converged_policy(log, 40) == (0.0, 1.0)
        assert converged_policy(log, 100) == (0.6, 1.0)

    def test_window_too_large(self):
        cfg = small_config()
        log = simulate_run(cfg, 0)
        with pytest.raises(ValueError):
            converged_policy(log, len(log) + 1)


class TestSummaries:
    def test_summary_fields(self):
        cfg = small_config(game="PrisonersDilemma", matchup=("AH", "LH"),
                           episodes=10, window=50)
        game = cfg.validate()
        log = simulate_run(cfg, 0)
        s = summarize_run(log, cfg, game)
        assert 0.0 <= s.policy[0] <= 1.0 and 0.0 <= s.policy[1] <= 1.0
        assert s.change_rate[0] is not None and s.change_rate[1] is not None
        assert s.mean_l2[0] is not None and s.max_l2[0] >= s.mean_l2[0] >= 0.0
        assert s.ref_trace[0]["mean"] is not None
        assert s.classification["policy"] == list(s.policy)

    def test_ai_summary_marks_not_applicable(self):
        cfg = small_config(matchup=("AI", "AI"))
        result = run_experiment(cfg)
        for s in result.summaries:
            assert s.change_rate == (None, None)
            assert s.mean_l2 == (None, None)
            assert s.ref_trace[0]["mean"] is None

    def test_run_experiment_collects(self):
        cfg = small_config()
        result = run_experiment(cfg)
        assert len(result.summaries) == 2
        assert len(result.logs) == 2
        assert run_experiment(cfg, keep_logs=False).logs is None


class TestConfigFlags:
    def test_lh_prospect_center_avg_reward(self):
        base = small_config(game="MatchingPennies", matchup=("LH", "AI"),
                            episodes=20, window=100)
        alt = small_config(game="MatchingPennies", matchup=("LH", "AI"),
                           episodes=20, window=100, lh_prospect_center="avg-reward")
        assert simulate_run(base, 0).rows != simulate_run(alt, 0).rows

    def test_rejects_unknown_center(self):
        with pytest.raises(ConfigError):
            small_config(lh_prospect_center="median").validate()

    def test_vbased_literal_variant_runs(self):
        cfg = small_config(matchup=("LH", "LH"),
                           ref_model=ReferenceModel(kind="VBased"), vbased_literal=True)
        log = simulate_run(cfg, 0)
        assert len(log) == cfg.total_steps


class TestReferenceDynamics:
    def test_fixed_model_never_moves(self):
        cfg = small_config(game="Chicken", matchup=("AH", "LH"),
                           ref_model=ReferenceModel(kind="Fixed", fixed_value=0.7))
        log = simulate_run(cfg, 0)
        assert all(t[7] == 0.7 and t[8] == 0.7 for t in log.rows)

    def test_ah_vbased_is_anticipated_payoff_digest(self):
        # Stag Hunt best replies: (stag->stag, hare->hare), payoffs 3 and 1.
        cfg = small_config(game="StagHunt", matchup=("AH", "AH"),
                           ref_model=ReferenceModel(kind="VBased"))
        log = simulate_run(cfg, 0)
        assert all(t[7] == 2.0 for t in log.rows[1:])

    def test_ema_tracks_own_rewards(self):
        from cptgames.reference import update_ema

        cfg = small_config(game="PrisonersDilemma", matchup=("AH", "AH"),
                           ref_model=ReferenceModel(kind="EMA"))
        log = simulate_run(cfg, 0)
        ref = 0.0
        for t in log.rows:
            assert t[7] == ref  # reference recorded before the update
            ref = update_ema(ref, t[5], 0.95)


class TestDegenerateParams:
    def test_eu_degenerate_lh_has_zero_l2(self):
        cfg = small_config(game="BattleOfTheSexes", matchup=("LH", "LH"),
                           cpt=EU_PARAMS, episodes=10, window=50)
        log = simulate_run(cfg, 0)
        for t in log.rows:
            assert t[23] == 0.0 and t[24] == 0.0
            assert t[21] == 0.0 and t[22] == 0.0
