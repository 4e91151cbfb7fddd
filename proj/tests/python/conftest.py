import os
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def schema_dir():
    return Path(os.environ.get("CTLAB_SCHEMA_DIR", ROOT / "schemas"))


@pytest.fixture(scope="session")
def golden_dir():
    return Path(os.environ.get("CTLAB_GOLDEN_DIR", ROOT / "tests" / "golden"))
