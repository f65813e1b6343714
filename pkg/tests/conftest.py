# tests/conftest.py

import json
import os

import pytest

os.environ.setdefault("ENVIRONMENT", "testing")

from main import main  # noqa: E402
from services.rep_models import fundamental_models  # noqa: E402
from services.root_system import DomWeight  # noqa: E402
from utils.logging import setup_testing_logging  # noqa: E402

setup_testing_logging()


@pytest.fixture
def omega():
    """omega(i) -> DomWeight of the i-th fundamental weight"""
    return DomWeight.fundamental


@pytest.fixture(scope="session")
def models():
    return fundamental_models()


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    directory = tmp_path / "cache"
    monkeypatch.setenv("ESSIG_CACHE", str(directory))
    monkeypatch.delenv("ESSIG_DATABASE_URL", raising=False)
    return directory


@pytest.fixture
def run_cli(cache_dir, capsys):
    """Run the command line; returns (exit code, stdout, stderr)"""
    def run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return run


@pytest.fixture
def run_json(run_cli):
    def run(*argv):
        code, out, _ = run_cli(*argv, "--format", "json")
        return code, json.loads(out)
    return run
