"""Shared fixtures: a strict config and a handful of small objects."""

import json
from pathlib import Path
from typing import Any, Callable

import pytest

from src.core.algebras import StructAlgebra
from src.core.fincat import FinCategory
from src.core.freegraded import zero_mult_presentation
from src.models import AppConfig, set_config
from src.models.config import LinalgConfig


@pytest.fixture(autouse=True)
def strict_config():
    """Every test runs with invariant re-checks on and a fresh config afterwards."""
    config = AppConfig(linalg=LinalgConfig(check_invariants=True))
    set_config(config)
    yield config
    set_config(None)


@pytest.fixture
def chain_category() -> FinCategory:
    """a -> b -> c with the composite a -> c."""
    return FinCategory.from_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture
def span_category() -> FinCategory:
    """b <- a -> c, no terminal object."""
    return FinCategory.from_poset(["a", "b", "c"], [("a", "b"), ("a", "c")])


@pytest.fixture
def dual_numbers() -> StructAlgebra:
    return StructAlgebra.dual_numbers()


@pytest.fixture
def v2_presentation():
    return zero_mult_presentation(2, 6)


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], str]:
    """Write a JSON document under tmp_path and return its path."""

    def write(name: str, payload: Any) -> str:
        path = tmp_path / name
        text = payload if isinstance(payload, str) else json.dumps(payload)
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write
