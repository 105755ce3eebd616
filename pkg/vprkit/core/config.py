from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide settings, read from VPRKIT_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="VPRKIT_", env_file=".env", extra="ignore"
    )

    threads: int = Field(default=1, ge=1, description="Cap on worker threads")
    log_level: str = "INFO"
    lock_timeout: float = Field(
        default=0.0, ge=0, description="Seconds to wait for an output dir lock"
    )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()
