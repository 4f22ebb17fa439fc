import os
import tempfile
from pathlib import Path

# settings are read once per process, so the environment is fixed before any import
_scratch = Path(tempfile.mkdtemp(prefix="cglearn-tests-"))
os.environ.setdefault("LOG_DIR", str(_scratch / "logs"))
os.environ.setdefault("LOG_LEVEL", "WARNING")
os.environ.setdefault("DATABASE_URL", f"sqlite:///{_scratch / 'results.db'}")

import pytest  # noqa: E402

from Synth.Fixtures import example1, example2, shared_head  # noqa: E402


@pytest.fixture
def ex1():
    return example1()


@pytest.fixture
def ex2():
    return example2()


@pytest.fixture
def fig4():
    return shared_head()
