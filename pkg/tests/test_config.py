"""
Tests for defaults, experiment config files, presets and schema validation.
"""

import json

import pytest


class TestDefaults:
    """Tests for the default dictionaries."""

    def test_fresh_copies(self):
        from abcmeta.config.defaults import get_defaults

        first = get_defaults("experiment", "S2")
        first["methods"].append("adhoc")
        assert get_defaults("experiment", "S2")["methods"] == ["bland", "wan", "abc"]

    def test_kinds(self):
        from abcmeta.config.defaults import get_defaults

        assert get_defaults("abc")["accept_pct"] is None
        assert get_defaults("selection")["candidates"] == ["beta", "normal"]
        assert get_defaults("experiment")["abc"]["n_iter"] == 20_000
        with pytest.raises(ValueError):
            get_defaults("report")


class TestMergeExperiment:
    """Tests for merge_experiment()."""

    def test_abc_keys_merge(self):
        from abcmeta.config.defaults import get_experiment_defaults
        from abcmeta.config.loader import merge_experiment

        merged = merge_experiment(get_experiment_defaults("S1"), {"abc": {"n_iter": 500}})
        assert merged["abc"]["n_iter"] == 500
        assert merged["abc"]["block_size"] == 1_000

    def test_epsilon_clears_accept_pct(self):
        from abcmeta.config.loader import merge_experiment

        defaults = {"abc": {"accept_pct": 0.5, "epsilon": None}}
        merged = merge_experiment(defaults, {"abc": {"epsilon": 0.2}})
        assert merged["abc"] == {"accept_pct": None, "epsilon": 0.2}

    def test_inputs_untouched(self):
        from abcmeta.config.defaults import get_experiment_defaults
        from abcmeta.config.loader import merge_experiment

        defaults = get_experiment_defaults("S1")
        user = {"n_grid": [10, 20], "abc": {"seed": 3}}
        merged = merge_experiment(defaults, user)
        merged["n_grid"].append(30)
        merged["abc"]["seed"] = 4
        assert user == {"n_grid": [10, 20], "abc": {"seed": 3}}
        assert defaults["abc"]["seed"] is None


class TestBuildExperiment:
    """Tests for converting config objects."""

    def test_minimal_object_gets_defaults(self):
        from abcmeta.config.loader import build_experiment

        config = build_experiment({"distribution": {"family": "beta", "p1": 9, "p2": 4}, "scenario": "S2"})
        assert [m.value for m in config.methods] == ["bland", "wan", "abc"]
        assert config.replicates == 200
        assert config.abc.n_iter == 20_000
        assert config.n_grid[0] == 10

    def test_unknown_method_names_its_position(self):
        from abcmeta.config.loader import parse_experiment_data
        from abcmeta.core.errors import ConfigError

        data = {"experiments": [{
            "distribution": {"family": "normal", "p1": 50, "p2": 17},
            "scenario": "S1",
            "methods": ["wan", "median"],
        }]}
        with pytest.raises(ConfigError) as exc:
            parse_experiment_data(data)
        assert exc.value.field == "experiments[0].methods[1]"

    def test_method_wrong_scenario(self):
        from abcmeta.config.loader import parse_experiment_data
        from abcmeta.core.errors import ConfigError

        data = {"experiments": [
            {"distribution": {"family": "normal", "p1": 50, "p2": 17}, "scenario": "S1"},
            {"distribution": {"family": "normal", "p1": 50, "p2": 17}, "scenario": "S3", "methods": ["hozo"]},
        ]}
        with pytest.raises(ConfigError) as exc:
            parse_experiment_data(data)
        assert exc.value.field == "experiments[1].methods[0]"

    def test_schema_error_path(self):
        from abcmeta.config.loader import parse_experiment_data
        from abcmeta.core.errors import ConfigError

        data = {"experiments": [{
            "distribution": {"family": "normal", "p1": 50, "p2": 17},
            "scenario": "S1",
            "abc": {"n_iter": 0},
        }]}
        with pytest.raises(ConfigError) as exc:
            parse_experiment_data(data)
        assert exc.value.field == "experiments[0].abc.n_iter"

    def test_bad_distribution(self):
        from abcmeta.config.loader import build_experiment
        from abcmeta.core.errors import ConfigError

        with pytest.raises(ConfigError) as exc:
            build_experiment({"distribution": {"family": "beta", "p1": -1, "p2": 4}, "scenario": "S2"})
        assert exc.value.field == "distribution"

    def test_both_acceptance_modes(self):
        from abcmeta.config.loader import build_experiment
        from abcmeta.core.errors import ConfigError

        data = {
            "distribution": {"family": "normal", "p1": 0, "p2": 1},
            "scenario": "S1",
            "abc": {"accept_pct": 1.0, "epsilon": 0.5},
        }
        with pytest.raises(ConfigError) as exc:
            build_experiment(data, "experiments[2]")
        assert exc.value.field == "experiments[2].abc"

    def test_epsilon_alone_is_accepted(self):
        from abcmeta.config.loader import build_experiment

        data = {"distribution": {"family": "normal", "p1": 0, "p2": 1}, "scenario": "S1", "abc": {"epsilon": 0.5}}
        config = build_experiment(data)
        assert config.abc.uses_epsilon
        assert config.abc.accept_pct is None

    def test_selection_object(self):
        from abcmeta.config.loader import build_selection_experiment

        config = build_selection_experiment({"distribution": {"family": "beta", "p1": 9, "p2": 4}})
        assert config.n == 400
        assert [c.value for c in config.candidates] == ["beta", "normal"]

    def test_validate_without_building(self):
        from abcmeta.config.loader import validate_experiment_dict

        assert validate_experiment_dict({"distribution": {"family": "normal", "p1": 0, "p2": 1}, "scenario": "S1"}) == []
        messages = validate_experiment_dict({"scenario": "S4"})
        assert any("distribution" in m for m in messages)
        assert any(m.startswith("scenario") for m in messages)

    def test_empty_file(self):
        from abcmeta.config.loader import parse_experiment_data
        from abcmeta.core.errors import ConfigError

        with pytest.raises(ConfigError):
            parse_experiment_data({"experiments": []})
        with pytest.raises(ConfigError):
            parse_experiment_data([1, 2])


class TestFiles:
    """Tests for load_experiment_file() and presets."""

    def test_load_file(self, tmp_path):
        from abcmeta.config.loader import load_experiment_file

        path = tmp_path / "exp.json"
        path.write_text(json.dumps({
            "distribution": {"family": "exponential", "p1": 10},
            "scenario": "S3",
            "n_grid": [20, 40],
            "replicates": 2,
        }))
        loaded = load_experiment_file(path)
        assert loaded.source == path
        assert len(loaded.experiments) == 1
        assert loaded.experiments[0].n_grid == (20, 40)

    def test_invalid_json(self, tmp_path):
        from abcmeta.config.loader import load_experiment_file
        from abcmeta.core.errors import ConfigError

        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError, match="not valid JSON"):
            load_experiment_file(path)

    def test_missing_file(self, tmp_path):
        from abcmeta.config.loader import load_experiment_file
        from abcmeta.core.errors import ConfigError

        with pytest.raises(ConfigError):
            load_experiment_file(tmp_path / "absent.json")

    def test_presets_load(self):
        from abcmeta.config.loader import list_presets, load_preset

        names = list_presets()
        assert {"s1_families", "s2_lognormal", "s2_beta", "wan_vs_abc", "selection"} <= set(names)
        for name in names:
            assert not load_preset(name).empty

    def test_wan_vs_abc_grid(self):
        from abcmeta.config.loader import load_preset

        experiments = load_preset("wan_vs_abc").experiments
        assert len(experiments) == 12
        assert {e.scenario.value for e in experiments} == {"S1", "S2", "S3"}

    def test_unknown_preset(self):
        from abcmeta.config.loader import preset_path
        from abcmeta.core.errors import ConfigError

        with pytest.raises(ConfigError, match="s1_families"):
            preset_path("no_such_study")


class TestValidator:
    """Tests for the schema validator."""

    def test_builtin_schemas(self):
        from abcmeta.validation.validator import get_validator

        assert {"experiment", "selection_experiment", "experiment_file", "study_rows"} <= set(
            get_validator().list_schemas()
        )

    def test_unknown_schema(self):
        from abcmeta.validation.validator import Validator

        valid, errors = Validator().validate({}, "nope")
        assert not valid
        assert "Unknown schema" in errors[0].message

    def test_paths(self):
        from abcmeta.validation.validator import join_path

        assert join_path("", ["abc", "n_iter"]) == "abc.n_iter"
        assert join_path("experiments[0]", ["methods", 2]) == "experiments[0].methods[2]"
        assert join_path("", []) == "root"

    def test_study_rows(self):
        from abcmeta.validation.validator import validate_study_rows

        valid, _ = validate_study_rows([{"study_id": "a", "n": 10, "x_med": 3.0}])
        assert valid
        valid, errors = validate_study_rows([{"study_id": "a", "n": "ten"}])
        assert not valid
        assert errors[0].path == "[0].n"

    def test_builtin_schemas_are_well_formed(self):
        import jsonschema

        from abcmeta.validation.validator import BUILTIN_SCHEMAS

        for schema in BUILTIN_SCHEMAS.values():
            jsonschema.Draft7Validator.check_schema(schema)

    def test_shared_instance(self):
        from abcmeta.validation.validator import get_validator

        assert get_validator() is get_validator()
