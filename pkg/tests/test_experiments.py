import json
import math

import pytest

from rainbowconn.errors import ConfigError
from rainbowconn.experiments import (
    ExperimentConfig,
    read_csv,
    rows_to_csv,
    run_experiment,
    scaling_report,
    write_csv,
)


def small_config(**overrides):
    base = dict(
        experiment="unit",
        pipeline="mindeg",
        n_values=[40, 60],
        r_values=[6],
        trials=2,
        base_seed=7,
        verify="certificate-sample",
        verify_pairs=50,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


class TestConfig:
    def test_round_trip(self):
        cfg = small_config()
        again = ExperimentConfig.from_json(cfg.to_json())
        assert again == cfg

    def test_empty_n_list_named_error(self):
        with pytest.raises(ConfigError, match="n_values"):
            small_config(n_values=[]).validate()

    def test_unknown_pipeline(self):
        with pytest.raises(ConfigError, match="pipeline"):
            small_config(pipeline="mystery").validate()

    def test_unknown_field_rejected(self):
        data = json.loads(small_config().to_json())
        data["typo_field"] = 1
        with pytest.raises(ConfigError, match="typo_field"):
            ExperimentConfig.from_json(json.dumps(data))

    def test_diameter_needs_model(self):
        with pytest.raises(ConfigError, match="model"):
            small_config(pipeline="diameter").validate()


class TestRunExperiment:
    def test_mindeg_rows_respect_bound(self):
        cfg = small_config(n_values=[100, 200], trials=5)
        rows = run_experiment(cfg)
        assert len(rows) == 10
        for row in rows:
            assert row.status == "ok"
            assert row.verify_verdict == "pass"
            assert row.colours_used <= row.bound_value
            assert row.bound_value == math.ceil(16 * row.n / 6)

    def test_determinism_byte_identical(self):
        cfg = small_config()
        csv1 = rows_to_csv(run_experiment(cfg), cfg)
        csv2 = rows_to_csv(run_experiment(cfg), cfg)
        assert csv1 == csv2

    def test_failures_recorded_not_dropped(self):
        # r=5 with odd n cannot exist; the row must carry the error.
        cfg = small_config(pipeline="regular", n_values=[33], r_values=[5], trials=1)
        rows = run_experiment(cfg)
        assert len(rows) == 1
        assert rows[0].status.startswith("error:")
        assert rows[0].replay.startswith("rainbowconn ")

    def test_every_row_has_replay(self):
        rows = run_experiment(small_config(trials=1))
        assert all(row.replay for row in rows)

    def test_diameter_pipeline(self):
        cfg = small_config(
            pipeline="diameter",
            model="cycle+quarter-matching",
            n_values=[32, 64],
            r_values=[0],
            trials=2,
            verify="none",
        )
        rows = run_experiment(cfg)
        assert all(row.diam1 is not None for row in rows)

    def test_timing_optional(self):
        cfg = small_config(trials=1, record_timing=True)
        rows = run_experiment(cfg)
        assert all(row.wall_ms for row in rows)


class TestCsv:
    def test_round_trip(self, tmp_path):
        cfg = small_config(trials=1)
        rows = run_experiment(cfg)
        path = tmp_path / "res.csv"
        write_csv(rows, cfg, path)
        back = read_csv(path)
        assert len(back) == len(rows)
        assert back[0]["n"] == rows[0].n
        assert back[0]["colours_used"] == rows[0].colours_used

    def test_malformed_csv(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("# comment only\n")
        with pytest.raises(ConfigError):
            read_csv(path)


class TestScalingReport:
    def test_ratio_columns(self):
        cfg = small_config()
        report = scaling_report(run_experiment(cfg))
        group = report["groups"][0]
        assert [cell["n"] for cell in group["cells"]] == [40, 60]
        for cell in group["cells"]:
            assert cell["colours_per_lognr"] > 0

    def test_single_n_suppresses_trend(self):
        cfg = small_config(n_values=[40], trials=1)
        report = scaling_report(run_experiment(cfg))
        assert "doubling_steps" not in report["groups"][0]

    def test_doubling_flags(self):
        cfg = small_config(
            pipeline="diameter",
            model="cycle+quarter-matching",
            n_values=[32, 64, 128],
            r_values=[0],
            trials=3,
            verify="none",
        )
        report = scaling_report(run_experiment(cfg))
        group = report["groups"][0]
        assert len(group["doubling_steps"]) == 2
        assert "ratio_bounded" in group
