import pytest
from pydantic import ValidationError

from services.settings import AnalysisSettings, load_config_file, load_settings


def test_defaults():
    s = AnalysisSettings()
    assert (s.precision, s.max_precision, s.max_depth, s.exterior_power_cap) == (32, 4096, 64, 12)
    assert not s.slow


@pytest.mark.parametrize(
    "values",
    [
        {"precision": 2},
        {"precision": 512, "max_precision": 256},
        {"max_depth": 0},
        {"grid_points": 1},
        {"unknown": 1},
    ],
)
def test_invalid_values(values):
    with pytest.raises(ValidationError):
        AnalysisSettings(**values)


def test_settings_are_frozen():
    s = AnalysisSettings()
    with pytest.raises(ValidationError):
        s.precision = 64


def test_missing_default_file_means_defaults(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert load_config_file() == {}
    assert load_settings() == AnalysisSettings()


def test_explicit_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_settings(str(tmp_path / "absent.toml"))


def test_toml_then_environment_then_overrides(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "fewnomial.toml").write_text("[analysis]\nprecision = 40\nmax_depth = 20\nexterior_power_cap = 6\n")
    s = load_settings()
    assert (s.precision, s.max_depth, s.exterior_power_cap) == (40, 20, 6)

    monkeypatch.setenv("FEWNOMIAL_MAX_DEPTH", "30")
    s = load_settings()
    assert (s.precision, s.max_depth) == (40, 30)

    s = load_settings(overrides={"max_depth": 50, "precision": None})
    assert (s.precision, s.max_depth) == (40, 50)


def test_named_config_file(tmp_path):
    path = tmp_path / "custom.toml"
    path.write_text("[analysis]\nmax_precision = 1024\n\n[other]\nignored = true\n")
    assert load_config_file(str(path)) == {"max_precision": 1024}
    assert load_settings(str(path)).max_precision == 1024


def test_bad_environment_value(monkeypatch):
    monkeypatch.setenv("FEWNOMIAL_PRECISION", "lots")
    with pytest.raises(ValidationError):
        load_settings(overrides={})
