from typing import Literal, get_args

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

LogLevel = Literal["debug", "info", "warning", "error", "critical"]
LOG_LEVELS: tuple[str, ...] = get_args(LogLevel)


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8")

    app_name: str = "forall-plus-kernel"
    debug: bool = False
    host: str = "0.0.0.0"
    port: int = 8000
    log_level: LogLevel = "warning"
    cors_origins: list[str] = ["*"]
    metrics_enabled: bool = True

    fuel: int = Field(default=10_000, ge=0)
    budget: int = Field(default=100_000, ge=1)
    seed: int = 0
    oracle_depth: int = Field(default=10, ge=1)
    oracle_type_size: int = Field(default=5, ge=1)
    corpus_concurrency: int = Field(default=4, ge=1)
    max_term_length: int = Field(default=65_536, ge=1)


settings = Settings()
