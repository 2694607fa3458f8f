from pydantic_settings import BaseSettings, SettingsConfigDict
from functools import lru_cache
from typing import Literal

class Settings(BaseSettings):
    """Simulator settings with validation"""

    # Defaults for command-line flags
    default_topology: Literal["moore8", "vonneumann4", "hex6"] = "moore8"
    default_rule: Literal["best", "any-better"] = "best"

    # Exploration sweep (visual scale of the published figures)
    explore_rows: int = 100
    explore_cols: int = 100
    explore_horizon: int = 200
    explore_budget: int = 100

    # Linear-realizability census
    census_samples: int = 10000
    realizability_tolerance: float = 1e-9
    lp_backend: Literal["highs", "exact"] = "highs"

    # Worker processes for census/exploration (1 = in-process)
    workers: int = 1

    # Optional result persistence
    database_url: str = "sqlite:///spatialgames.db"
    record_results: bool = False

    log_level: str = "WARNING"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="SPATIALGAMES_",
        case_sensitive=False,
        extra="ignore"
    )

@lru_cache
def get_settings() -> Settings:
    """
    Create and cache settings instance.
    Settings are loaded once per process and reused.
    """
    return Settings()
