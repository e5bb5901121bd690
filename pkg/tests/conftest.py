import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from world import build_corpus, build_wiki  # noqa: E402


@pytest.fixture(scope="session")
def world_corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def world_snapshot():
    return build_wiki()
