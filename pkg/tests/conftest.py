import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.utils.config import reset_settings


@pytest.fixture(autouse=True)
def clear_env(monkeypatch):
    for key in [
        "MAXSUB_PRECISION_CAP",
        "MAXSUB_INITIAL_PRECISION",
        "MAXSUB_FIELD_CONDUCTOR",
        "MAXSUB_STREAM_PULL_LIMIT",
        "MAXSUB_LOG_LEVEL",
    ]:
        monkeypatch.delenv(key, raising=False)
    reset_settings()
    yield
    reset_settings()
