import random
import sys
from pathlib import Path

import pytest

# Ensure repo root is on PYTHONPATH so `import mfk` works without installing
REPO_ROOT = Path(__file__).resolve().parents[1]
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))

from mfk import catalog  # noqa: E402
from mfk.poly import symbols  # noqa: E402


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def xyz():
    return symbols("x y z")


@pytest.fixture(scope="session")
def golden_dir():
    return str(REPO_ROOT / "data" / "golden")


@pytest.fixture(scope="session")
def flop():
    return catalog.universal_flop2()
