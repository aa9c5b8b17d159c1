"""Unit tests for the file formats: step-log CSV, summary JSON, manifest,
and config fingerprints."""

import json
import math

import pytest

from cptgames.engine import ExperimentConfig, iter_runs, run_experiment
from cptgames.reference import ReferenceModel
from cptgames.storage import (
    STEP_HEADER,
    config_fingerprint,
    config_to_dict,
    read_step_log,
    read_summary,
    summary_payload,
    write_step_log,
    write_summary,
)

CFG = ExperimentConfig(game="MatchingPennies", matchup=("AH", "LH"),
                       episodes=4, steps_per_episode=10, runs=2, window=10)


class TestStepLog:
    def test_round_trip(self, tmp_path):
        result = run_experiment(CFG)
        path = tmp_path / "steps.csv"
        write_step_log(path, result.logs)
        loaded = read_step_log(path)
        assert len(loaded) == 2
        for log, rows in zip(result.logs, loaded):
            assert len(rows) == len(log.rows)
            for orig, back in zip(log.rows, rows):
                for a, b in zip(orig, back):
                    if isinstance(a, float) and math.isnan(a):
                        assert math.isnan(b)
                    else:
                        assert a == b

    def test_header_first_line(self, tmp_path):
        result = run_experiment(CFG)
        path = tmp_path / "steps.csv"
        write_step_log(path, result.logs)
        assert path.read_text().splitlines()[0] == STEP_HEADER

    def test_rejects_foreign_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError):
            read_step_log(path)

    def test_byte_identical_rewrite(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        write_step_log(a, (log for log, _ in iter_runs(CFG)))
        write_step_log(b, (log for log, _ in iter_runs(CFG)))
        assert a.read_bytes() == b.read_bytes()


class TestSummary:
    def test_round_trip(self, tmp_path):
        result = run_experiment(CFG, keep_logs=False)
        path = tmp_path / "summary.json"
        write_summary(path, CFG, result.summaries)
        data = read_summary(path)
        assert data["schema_version"] == 1
        assert data["fingerprint"] == config_fingerprint(CFG)
        assert len(data["runs"]) == 2
        run0 = data["runs"][0]
        assert run0["policy"] == list(result.summaries[0].policy)
        assert run0["seed"] == 0

    def test_payload_is_json_stable(self):
        result = run_experiment(CFG, keep_logs=False)
        a = json.dumps(summary_payload(CFG, result.summaries), sort_keys=True)
        b = json.dumps(summary_payload(CFG, result.summaries), sort_keys=True)
        assert a == b


class TestFingerprint:
    def test_stable(self):
        assert config_fingerprint(CFG) == config_fingerprint(CFG)

    def test_sensitive_to_every_semantic_field(self):
        base = config_fingerprint(CFG)
        variants = [
            ExperimentConfig(game="Chicken", matchup=CFG.matchup, episodes=4,
                             steps_per_episode=10, runs=2, window=10),
            ExperimentConfig(game=CFG.game, matchup=("LH", "AH"), episodes=4,
                             steps_per_episode=10, runs=2, window=10),
            ExperimentConfig(game=CFG.game, matchup=CFG.matchup, episodes=4,
                             steps_per_episode=10, runs=2, window=10, base_seed=9),
            ExperimentConfig(game=CFG.game, matchup=CFG.matchup, episodes=4,
                             steps_per_episode=10, runs=2, window=10,
                             ref_model=ReferenceModel(kind="VBased")),
            ExperimentConfig(game=CFG.game, matchup=CFG.matchup, episodes=4,
                             steps_per_episode=10, runs=2, window=10, history=2),
        ]
        prints = {config_fingerprint(v) for v in variants}
        assert base not in prints
        assert len(prints) == len(variants)

    def test_dict_covers_knobs(self):
        d = config_to_dict(CFG)
        assert d["cpt"]["lam"] == 2.25
        assert d["learning"]["temperature"] == 1.3
        assert d["ref_model"]["kind"] == "EMA"
