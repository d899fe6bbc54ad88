import json
import os
import shutil
import subprocess
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli() -> str:
    path = os.environ.get("DUFLO_CLI") or shutil.which("duflo")
    if not path:
        candidate = ROOT / "build" / "tools" / "duflo"
        path = str(candidate) if candidate.exists() else None
    if not path:
        pytest.skip("duflo CLI not built")
    return path


@pytest.fixture(scope="session")
def schema() -> dict:
    return json.loads((ROOT / "docs" / "report.schema.json").read_text())


@pytest.fixture
def run(cli, tmp_path):
    def _run(*args: str, env: dict | None = None) -> subprocess.CompletedProcess:
        full_env = {k: v for k, v in os.environ.items() if k != "DUFLO_OUTPUT_DIR"}
        full_env.update(env or {})
        return subprocess.run([cli, *args], capture_output=True, text=True, cwd=tmp_path, env=full_env, timeout=600)

    return _run
