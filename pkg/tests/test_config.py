from pathlib import Path

import pytest

from almost_golomb import config


def test_safe_yaml_load_empty_file(tmp_path: Path) -> None:
    path = tmp_path / "config.yaml"
    path.write_text("", encoding="utf-8")
    assert config._safe_yaml_load(path) == {}


def test_safe_yaml_load_non_mapping(tmp_path: Path) -> None:
    path = tmp_path / "config.yaml"
    path.write_text("- item1\n- item2\n", encoding="utf-8")
    assert config._safe_yaml_load(path) == {}


def test_safe_yaml_load_missing_file(tmp_path: Path) -> None:
    path = tmp_path / "missing.yaml"
    assert config._safe_yaml_load(path) == {}


def test_safe_yaml_load_invalid_yaml(tmp_path: Path) -> None:
    path = tmp_path / "config.yaml"
    path.write_text("[unclosed", encoding="utf-8")
    with pytest.raises(RuntimeError):
        config._safe_yaml_load(path)


def test_candidate_order(tmp_path: Path, monkeypatch) -> None:
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path / "home"))
    monkeypatch.setenv("XDG_CONFIG_DIRS", f"{tmp_path / 'a'}:{tmp_path / 'b'}")
    candidates = config._candidate_files()
    assert candidates[0] == tmp_path / "a" / "almost-golomb" / "config.yaml"
    assert candidates[-1] == tmp_path / "home" / "almost-golomb" / "config.yml"
    assert len(candidates) == 6


def test_user_config_overrides_system(xdg_home: Path, tmp_path: Path) -> None:
    system = tmp_path / "etc" / "almost-golomb"
    system.mkdir(parents=True)
    (system / "config.yaml").write_text("count: 50\nworkers: 2\n", encoding="utf-8")
    user = xdg_home / "almost-golomb"
    user.mkdir(parents=True)
    (user / "config.yaml").write_text("count: 70\n", encoding="utf-8")
    assert config.load_config() == {"count": 70, "workers": 2}


def test_unknown_keys_are_dropped(xdg_home: Path) -> None:
    user = xdg_home / "almost-golomb"
    user.mkdir(parents=True)
    (user / "config.yml").write_text("format: csv\ntoken: secret\n", encoding="utf-8")
    assert config.load_config() == {"format": "csv"}


def test_no_files(xdg_home: Path) -> None:
    assert config.load_config() == {}


@pytest.mark.parametrize(
    "text",
    [
        "count: 0\n",
        "count: many\n",
        "workers: true\n",
        "max_samples: -1\n",
        "format: xml\n",
        "full: 'yes'\n",
    ],
)
def test_invalid_values_are_rejected(xdg_home: Path, text: str) -> None:
    user = xdg_home / "almost-golomb"
    user.mkdir(parents=True)
    (user / "config.yaml").write_text(text, encoding="utf-8")
    with pytest.raises(RuntimeError, match="Invalid value"):
        config.load_config()


def test_valid_values_are_kept(xdg_home: Path) -> None:
    user = xdg_home / "almost-golomb"
    user.mkdir(parents=True)
    (user / "config.yaml").write_text(
        "count: 10\nformat: bfile\nworkers: 3\nmax_samples: 0\nfull: true\n", encoding="utf-8"
    )
    assert config.load_config() == {
        "count": 10,
        "format": "bfile",
        "workers": 3,
        "max_samples": 0,
        "full": True,
    }
