import json

import pytest

from ehcdf.config import (
    ConfigError,
    build_distribution,
    load_config,
    parse_config,
)


def base_experiment(**over):
    e = {
        "distribution": {"name": "normal", "params": [0.0, 1.0]},
        "n": [50],
        "gamma": [1.1],
        "estimators": ["ecdf", "ehcdf"],
        "metrics": ["L1"],
        "replications": 4,
        "seed": 7,
        "output_dir": "out",
    }
    e.update(over)
    return e


def base_config(**over):
    return {"experiments": [base_experiment(**over)]}


class TestParse:
    def test_minimal_valid(self):
        cfg = parse_config(base_config())
        exp = cfg.experiments[0]
        assert exp.n == (50,)
        assert exp.gamma == (1.1,)
        assert exp.estimators == ("ecdf", "ehcdf")
        assert exp.metrics == ("L1",)
        assert exp.label == "normal(0,1)"

    def test_top_level_shape(self):
        with pytest.raises(ConfigError, match="top level"):
            parse_config([])
        with pytest.raises(ConfigError, match="unknown top-level"):
            parse_config({"experiments": [base_experiment()], "extra": 1})
        with pytest.raises(ConfigError, match="nonempty list"):
            parse_config({"experiments": []})

    def test_unknown_experiment_key(self):
        with pytest.raises(ConfigError, match="unknown keys.*typo"):
            parse_config(base_config(typo=3))

    def test_missing_required(self):
        bad = base_experiment()
        del bad["seed"]
        with pytest.raises(ConfigError, match="missing keys.*seed"):
            parse_config({"experiments": [bad]})

    def test_estimator_names_checked(self):
        with pytest.raises(ConfigError, match="estimators"):
            parse_config(base_config(estimators=["kernel"]))
        with pytest.raises(ConfigError, match="estimators"):
            parse_config(base_config(estimators=[]))

    def test_ehcdf_needs_gamma(self):
        with pytest.raises(ConfigError, match="gamma"):
            parse_config(base_config(gamma=[]))

    def test_ecdf_only_needs_no_gamma(self):
        cfg = parse_config(base_config(estimators=["ecdf"], gamma=[]))
        assert cfg.experiments[0].gamma == ()

    def test_gamma_outside_design_range_warns(self, capsys):
        parse_config(base_config(gamma=[0.8]))
        err = capsys.readouterr().err
        assert "outside [1, 1.5]" in err

    def test_metrics_validated(self):
        with pytest.raises(ConfigError, match="metrics"):
            parse_config(base_config(metrics=["L3"]))

    def test_needs_some_output(self):
        with pytest.raises(ConfigError, match="nothing to do"):
            parse_config(base_config(metrics=[], mse_probability_grid=[]))

    def test_mse_grid_inside_unit_interval(self):
        with pytest.raises(ConfigError, match="mse_probability_grid"):
            parse_config(base_config(mse_probability_grid=[0.0, 0.5]))
        cfg = parse_config(base_config(metrics=[], mse_probability_grid=[0.2, 0.8]))
        assert cfg.experiments[0].mse_probability_grid == (0.2, 0.8)

    def test_replications_and_seed_types(self):
        with pytest.raises(ConfigError, match="replications"):
            parse_config(base_config(replications=0))
        with pytest.raises(ConfigError, match="replications"):
            parse_config(base_config(replications=True))
        with pytest.raises(ConfigError, match="seed"):
            parse_config(base_config(seed="abc"))

    def test_n_entries(self):
        with pytest.raises(ConfigError, match="n entries"):
            parse_config(base_config(n=[50, 0]))
        with pytest.raises(ConfigError, match="must be a nonempty list"):
            parse_config(base_config(n=[]))

    def test_duplicate_estimators_deduped(self):
        cfg = parse_config(base_config(estimators=["ecdf", "ecdf", "ehcdf"]))
        assert cfg.experiments[0].estimators == ("ecdf", "ehcdf")


class TestDistributionConfig:
    def test_unknown_name(self):
        with pytest.raises(ConfigError, match="unknown distribution"):
            parse_config(base_config(distribution={"name": "zeta", "params": [2]}))

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="unknown distribution keys"):
            parse_config(base_config(
                distribution={"name": "normal", "params": [0, 1], "mean": 0}
            ))

    def test_bad_params_surface_at_load(self):
        with pytest.raises(ValueError, match="sd > 0"):
            parse_config(base_config(
                distribution={"name": "normal", "params": [0.0, -1.0]}
            ))

    def test_mixture_recursive(self):
        dist = {
            "name": "mixture",
            "components": [
                {"name": "normal", "params": [-2.0, 0.5]},
                {"name": "mixture", "components": [
                    {"name": "uniform", "params": [0.0, 1.0]},
                    {"name": "gamma", "params": [2.0, 1.0]},
                ]},
            ],
        }
        cfg = parse_config(base_config(distribution=dist))
        law = build_distribution(cfg.experiments[0].distribution)
        assert law.name == "mixture"

    def test_mixture_shape_checked(self):
        with pytest.raises(ConfigError, match="exactly 2"):
            parse_config(base_config(
                distribution={"name": "mixture",
                              "components": [{"name": "normal", "params": [0, 1]}]}
            ))
        with pytest.raises(ConfigError, match="components, not params"):
            parse_config(base_config(
                distribution={"name": "mixture", "params": [1],
                              "components": [
                                  {"name": "normal", "params": [0, 1]},
                                  {"name": "normal", "params": [0, 1]},
                              ]}
            ))


class TestLoadConfig:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "sim.json"
        path.write_text(json.dumps(base_config()))
        cfg = load_config(str(path))
        assert cfg.experiments[0].replications == 4

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError, match="not valid JSON"):
            load_config(str(path))
