import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from blindcap import desk  # noqa: E402
from blindcap.postag import train_tagger  # noqa: E402


@pytest.fixture(scope="session")
def desk_tagger():
    return train_tagger(desk.tagged_sentences() + desk.train_sentences(), epochs=5, seed=0)
