from typing import Optional

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class LinalgConfig(BaseModel):
    """Exact linear algebra tuning."""
    dense_fill_ratio: float = Field(
        default=0.3,
        gt=0.0,
        le=1.0,
        description="Switch to dense elimination at or above this fill ratio"
    )
    dense_dim_cutoff: int = Field(
        default=64,
        ge=0,
        description="Matrices with both dimensions below this always use dense elimination"
    )
    check_invariants: bool = Field(
        default=False,
        description="Re-verify SNF transforms, d∘d=0 and chain-map commutation on every call"
    )


class CategoryConfig(BaseModel):
    """Finite category limits."""
    max_morphisms: int = Field(
        default=64,
        ge=1,
        description="Composition tables are validated exhaustively, O(|mor|^3)"
    )
    normalized: bool = Field(
        default=True,
        description="Use the normalized nerve complex (chains without identities)"
    )


class GroupConfig(BaseModel):
    """Group homology caps."""
    max_order: int = Field(default=8, ge=1, description="Largest accepted group order")
    max_degree: int = Field(default=4, ge=0, description="Largest homological degree")


class GradedConfig(BaseModel):
    """Weight-graded free algebra caps."""
    max_generators: int = Field(default=3, ge=1, description="Largest generator count m")
    max_weight: int = Field(default=8, ge=1, description="Largest truncation weight W")


class RingConfig(BaseModel):
    """Finite ring and elementary matrix settings."""
    exhaustive_budget: int = Field(
        default=10**7,
        ge=1,
        description="Cap on |ring|^2 times index tuples for exhaustive relation checks"
    )
    matrix_size: int = Field(
        default=3,
        ge=3,
        description="Size N of the elementary matrix group E_N"
    )


class AppConfig(BaseSettings):
    """Root application configuration.

    Loads from environment variables with the HOMALG_ prefix.
    Example: HOMALG_LINALG__CHECK_INVARIANTS=1 for linalg.check_invariants
    """
    model_config = SettingsConfigDict(env_prefix="HOMALG_", env_nested_delimiter="__")

    linalg: LinalgConfig = Field(default_factory=LinalgConfig)
    category: CategoryConfig = Field(default_factory=CategoryConfig)
    group: GroupConfig = Field(default_factory=GroupConfig)
    graded: GradedConfig = Field(default_factory=GradedConfig)
    ring: RingConfig = Field(default_factory=RingConfig)

    threads: int = Field(
        default=1,
        ge=1,
        le=64,
        description="Worker threads for per-weight and per-degree work"
    )
    seed: int = Field(
        default=20240611,
        description="Seed for randomized property commands and the self-test"
    )
    debug: bool = Field(
        default=False,
        description="Enable verbose logging"
    )


_config: Optional[AppConfig] = None


def get_config() -> AppConfig:
    """Get or create the process-wide configuration."""
    global _config
    if _config is None:
        _config = AppConfig()
    return _config


def set_config(config: Optional[AppConfig]) -> None:
    """Replace the process-wide configuration (None resets to environment defaults)."""
    global _config
    _config = config
