import os

import numpy as np
import pytest


@pytest.fixture(autouse=True)
def _single_worker(monkeypatch):
    # In-process CLI invocations should not fork a pool under pytest.
    monkeypatch.setenv("QORREL_WORKERS", "1")


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)


def pytest_configure(config):
    os.environ.setdefault("QORREL_WORKERS", "1")
