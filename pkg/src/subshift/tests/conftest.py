from __future__ import annotations

import pytest

from subshift.utils import _clear_utility_caches


@pytest.fixture(autouse=True, scope="module")
def clear_utility_caches():
    yield
    _clear_utility_caches()


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    monkeypatch.delenv("SUBSHIFT_OUTPUT_DIR", raising=False)
    return tmp_path / "out"
