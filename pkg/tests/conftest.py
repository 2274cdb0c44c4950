import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "exact"))


@pytest.fixture
def cache_file(tmp_path, monkeypatch):
    """A private on-disk cache path, also exported through QTSYM_CACHE."""
    path = tmp_path / "ht.json"
    monkeypatch.setenv("QTSYM_CACHE", str(path))
    return path
