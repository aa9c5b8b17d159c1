"""Unit tests for the metrics layer."""

import math

import numpy as np
import pytest

from cptgames.engine import RunLog, StepRecord, simulate_run, ExperimentConfig
from cptgames.games import get
from cptgames.metrics import (
    Classification,
    classify_equilibrium,
    cpt_action_change_rate,
    cpt_action_change_rate_rows,
    cpt_eu_l2,
    episode_means,
    joint_action_frequencies,
    metric_series,
)

NAN = float("nan")


def make_row(step=0, actions=(0, 0), explored=(0.0, 0.0), eu_r=(0.0, 0.0),
             cpt_r=(0.0, 0.0), rewards=(0.0, 0.0), l2=(0.0, 0.0)):
    """A step tuple with the row agent's diagnostics under test and a value-
    free column agent."""
    return (
        step, 0, 0, actions[0], actions[1], rewards[0], rewards[1],
        0.0, 0.0, 0.0, 0.0, explored[0], explored[1],
        eu_r[0], eu_r[1], NAN, NAN,
        cpt_r[0], cpt_r[1], NAN, NAN,
        0.0, 0.0, l2[0], l2[1],
    )


def make_log(rows, kinds=("LH", "AI")):
    return RunLog(0, 0, kinds, "PrisonersDilemma", 10, rows)


class TestActionChangeRate:
    def test_always_agree_is_zero(self):
        rows = [make_row(step=i, eu_r=(1.0, 0.0), cpt_r=(2.0, 0.5)) for i in range(100)]
        assert cpt_action_change_rate_rows(rows, 0) == 0.0

    def test_near_ties_excluded(self):
        rows = [make_row(step=i, eu_r=(0.5, 0.5 + 1e-9), cpt_r=(1.0, 0.0)) for i in range(100)]
        assert cpt_action_change_rate_rows(rows, 0) == 0.0

    def test_synthetic_ten_percent(self):
        rows = []
        for i in range(100):
            if i < 10:
                rows.append(make_row(step=i, eu_r=(0.0, 1.0), cpt_r=(1.0, 0.0)))
            else:
                rows.append(make_row(step=i, eu_r=(0.0, 1.0), cpt_r=(0.0, 1.0)))
        assert cpt_action_change_rate_rows(rows, 0) == pytest.approx(0.10)

    def test_exploration_steps_excluded(self):
        rows = [make_row(step=i, explored=(1.0, 0.0), eu_r=(0.0, 1.0), cpt_r=(1.0, 0.0))
                for i in range(50)]
        rows += [make_row(step=50 + i, eu_r=(0.0, 1.0), cpt_r=(1.0, 0.0)) for i in range(50)]
        assert cpt_action_change_rate_rows(rows, 0) == pytest.approx(1.0)

    def test_scale_invariance(self):
        rng = np.random.default_rng(6)
        rows = [
            make_row(step=i, eu_r=tuple(rng.uniform(-1, 1, 2)), cpt_r=tuple(rng.uniform(-1, 1, 2)))
            for i in range(200)
        ]
        base = cpt_action_change_rate_rows(rows, 0, exclusion=1e-8)
        scale = 37.5
        scaled = [
            make_row(step=t[0], eu_r=(t[13] * scale, t[14] * scale),
                     cpt_r=(t[17] * scale, t[18] * scale))
            for t in rows
        ]
        assert cpt_action_change_rate_rows(scaled, 0, exclusion=1e-8 * scale) == base

    def test_ai_reported_not_applicable(self):
        log = make_log([make_row()], kinds=("AI", "LH"))
        assert cpt_action_change_rate(log)[0] is None


class TestCptEuL2:
    def test_identical_vectors(self):
        rec = StepRecord.from_tuple(make_row(eu_r=(1.0, 2.0), cpt_r=(1.0, 2.0)))
        assert cpt_eu_l2(rec, 0) == 0.0

    def test_three_four_five(self):
        rec = StepRecord.from_tuple(make_row(eu_r=(0.0, 0.0), cpt_r=(3.0, 4.0)))
        assert cpt_eu_l2(rec, 0) == 5.0


class TestClassification:
    def test_pd_near_defect(self):
        c = classify_equilibrium((0.01, 0.02), get("PrisonersDilemma"), 0.05)
        assert not c.anomalous
        assert c.point == (0.0, 0.0)
        assert set(c.concepts) == {"NE", "PT-NE", "PT-EB"}

    def test_mp_center(self):
        c = classify_equilibrium((0.5, 0.5), get("MatchingPennies"))
        assert c.point == (0.5, 0.5)
        assert c.distance == 0.0

    def test_anomalous(self):
        c = classify_equilibrium((0.9, 0.1), get("PrisonersDilemma"), 0.05)
        assert c.anomalous
        assert c.point is None
        assert c.policy == (0.9, 0.1)

    def test_relabel_symmetry_on_mp(self):
        game = get("MatchingPennies")
        for p, q in [(0.48, 0.53), (0.52, 0.47)]:
            a = classify_equilibrium((p, q), game)
            b = classify_equilibrium((1 - p, 1 - q), game)
            assert a.point == b.point and a.anomalous == b.anomalous

    def test_rejects_bad_tolerance(self):
        with pytest.raises(ValueError):
            classify_equilibrium((0.5, 0.5), get("MatchingPennies"), 0.0)


class TestJointActionFrequencies:
    def test_all_one_cell(self):
        rows = [make_row(step=i, actions=(1, 1)) for i in range(50)]
        freqs = joint_action_frequencies(make_log(rows), 50)
        assert freqs[1][1] == 1.0
        assert freqs[0][0] == freqs[0][1] == freqs[1][0] == 0.0

    def test_uniform_random(self):
        rng = np.random.default_rng(7)
        rows = [make_row(step=i, actions=(int(rng.integers(2)), int(rng.integers(2))))
                for i in range(5000)]
        freqs = joint_action_frequencies(make_log(rows), 5000)
        for i in range(2):
            for j in range(2):
                assert freqs[i][j] == pytest.approx(0.25, abs=0.02)

    def test_sums_to_one(self):
        rng = np.random.default_rng(8)
        rows = [make_row(step=i, actions=(int(rng.integers(2)), int(rng.integers(2))))
                for i in range(997)]
        freqs = joint_action_frequencies(make_log(rows), 997)
        assert sum(sum(r) for r in freqs) == pytest.approx(1.0, abs=1e-12)


class TestSeries:
    def test_episode_means(self):
        rows = [make_row(step=i, rewards=(float(i), 0.0)) for i in range(30)]
        log = make_log(rows)
        means = episode_means(log, 5)  # rewards_r column
        assert means == (4.5, 14.5, 24.5)

    def test_metric_series_shape_and_std(self):
        cfg = ExperimentConfig(episodes=4, steps_per_episode=10, runs=3, window=10,
                               matchup=("AI", "AI"))
        logs = [simulate_run(cfg, r) for r in range(3)]
        series = metric_series("reward_r", logs, 5)
        assert series.episodes == 4
        assert len(series.per_run) == 3
        assert all(len(r) == 4 for r in series.per_run)
        for e in range(4):
            vals = [series.per_run[r][e] for r in range(3)]
            assert series.mean[e] == pytest.approx(float(np.mean(vals)))
            assert series.std[e] == pytest.approx(float(np.std(vals)))
