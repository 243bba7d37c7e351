"""Pytest configuration and shared fixtures."""

from unittest import mock

import pytest
from click.testing import CliRunner

from almost_golomb.automata import build_dfao
from almost_golomb.core_seq import generate_almost_golomb, generate_gap_variant
from almost_golomb.dfao_tables import PUBLISHED


@pytest.fixture
def runner():
    """Fixture for Click's CliRunner to invoke CLI commands."""
    return CliRunner()


@pytest.fixture
def xdg_home(tmp_path, monkeypatch):
    """Point XDG lookups at an empty temporary tree."""
    home = tmp_path / ".config"
    monkeypatch.setenv("XDG_CONFIG_HOME", str(home))
    monkeypatch.setenv("XDG_CONFIG_DIRS", str(tmp_path / "etc"))
    return home


@pytest.fixture(scope="session")
def r2_seq():
    return generate_almost_golomb(2, 20_000)


@pytest.fixture(scope="session")
def r3_seq():
    return generate_almost_golomb(3, 30_000)


@pytest.fixture(scope="session")
def r4_seq():
    return generate_almost_golomb(4, 30_000)


@pytest.fixture(scope="session")
def r5_seq():
    return generate_almost_golomb(5, 30_000)


@pytest.fixture(scope="session")
def gap2_seq():
    return generate_gap_variant(2, 5_000)


@pytest.fixture
def corrupted_r3_table():
    """Published r3-eps table with the output of state c= flipped to 0."""
    base, text, labels = PUBLISHED["r3-eps"]
    broken = text.replace("\n3 1 4 3 5\n", "\n3 0 4 3 5\n")
    build_dfao.cache_clear()
    with mock.patch.dict(PUBLISHED, {"r3-eps": (base, broken, labels)}):
        yield
    build_dfao.cache_clear()
