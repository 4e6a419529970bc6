from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="DOCTRACE_", env_file=".env", case_sensitive=False, extra="ignore"
    )

    # Logging
    log_level: str = Field(default="INFO", description="Root log level")

    # Cache
    cache_dir: str = Field(
        default=".doctrace-cache", description="Directory of the JSONL response cache"
    )
    cache_backend: str = Field(
        default="jsonl", description="Response cache backend: jsonl or redis"
    )

    # Redis
    redis_url: str = Field(
        default="redis://localhost:6379/0", description="Redis connection URL"
    )
    redis_key_prefix: str = Field(
        default="doctrace", description="Key prefix for cached responses"
    )
    redis_max_connections: int = Field(default=20, description="Redis max connections")
    redis_socket_timeout: int = Field(default=5, description="Redis socket timeout")
    redis_socket_connect_timeout: int = Field(
        default=5, description="Redis socket connect timeout"
    )
    redis_ttl: Optional[int] = Field(
        default=None, description="Cached response TTL in seconds, none = keep"
    )

    # Providers
    default_provider: str = Field(
        default="mock", description="Provider switch used when the CLI gives none"
    )

    # Project
    project_name: str = Field(default="doctrace", description="Tool name")
    version: str = Field(default="0.1.0", description="Tool version")


# Global settings instance
settings = Settings()
