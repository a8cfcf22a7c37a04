"""Shared fixtures: deterministic hypothesis profile, seeded RNG and cache isolation."""

from __future__ import annotations

import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gf2trace.tools import golden
from gf2trace.tools.config import get_seed

settings.register_profile(
    "gf2trace",
    derandomize=True,
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "gf2trace"))


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--seed",
        type=int,
        default=None,
        help="seed for randomised residue checks (default: GF2TRACE_SEED or 20240601)",
    )


@pytest.fixture()
def seed(request: pytest.FixtureRequest) -> int:
    return get_seed(request.config.getoption("--seed"))


@pytest.fixture()
def rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


@pytest.fixture(autouse=True)
def clear_table_cache():
    """Automatically clear the reference-table cache before and after every test."""
    golden._load_table.cache_clear()
    yield
    golden._load_table.cache_clear()


@pytest.fixture(autouse=True)
def clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Tests never inherit budget or thread settings from the caller's shell."""
    for name in ("GF2TRACE_THREADS", "GF2TRACE_FIELD_MAX", "GF2TRACE_ENUM_MAX", "GF2TRACE_SEED"):
        monkeypatch.delenv(name, raising=False)
