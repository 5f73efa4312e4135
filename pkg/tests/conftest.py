import shutil
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ROOT = Path(__file__).resolve().parents[1]
FIXTURE_DIR = ROOT / "fixtures" / "synthetic"
FIXTURE_CONFIG = FIXTURE_DIR / "fixture.toml"
GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def fixture_config():
    from econforces.config import load_config

    return load_config(FIXTURE_CONFIG)


@pytest.fixture(scope="session")
def fixture_run(fixture_config):
    from econforces.pipeline import run_pipeline

    return run_pipeline(fixture_config)


@pytest.fixture
def fixture_copy(tmp_path):
    """A writable copy of the bundled dataset and its config."""
    dest = tmp_path / "data"
    shutil.copytree(FIXTURE_DIR, dest, ignore=shutil.ignore_patterns("out"))
    return dest


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
