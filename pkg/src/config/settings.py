"""
Configuration Management Module.

This module handles all workbench configuration using Pydantic Settings.
Defaults are sized so every acceptance run finishes on a laptop; every value
can be overridden from the environment or a ``.env`` file, and the CLI flags
override both.

Design Principles:
- Environment-based configuration
- Type-safe settings with validation
- Hierarchical configuration structure (one section per concern)
- Windows and truncation bounds are explicit, never implied
"""

from functools import lru_cache
from typing import Any, Dict

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from sympy import isprime


class AppSettings(BaseSettings):
    """Application-level settings."""

    app_name: str = Field(default="precy-workbench", description="Application name")
    app_version: str = Field(default="0.1.0", description="Application version")
    environment: str = Field(default="development", description="Environment: development, ci, production")
    log_level: str = Field(default="INFO", description="Logging level")
    log_format: str = Field(default="console", description="Log format: json or console")

    @field_validator("environment")
    @classmethod
    def validate_environment(cls, v: str) -> str:
        """Validate environment value."""
        allowed = ["development", "ci", "production"]
        if v not in allowed:
            raise ValueError(f"Environment must be one of {allowed}")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        allowed = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in allowed:
            raise ValueError(f"Log level must be one of {allowed}")
        return v.upper()

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        """Validate log format."""
        allowed = ["json", "console"]
        if v not in allowed:
            raise ValueError(f"Log format must be one of {allowed}")
        return v


class AlgebraSettings(BaseSettings):
    """The loop algebra H = R[t]/(t^{D+1}) and its coefficient field."""

    sphere_dimension: int = Field(default=2, ge=2, description="Calabi-Yau dimension n")
    truncation: int = Field(default=10, ge=4, description="Largest t-exponent D")
    field: str = Field(default="q", description="Coefficient field: q, f2 or fp:<p>")

    @field_validator("field")
    @classmethod
    def validate_field(cls, v: str) -> str:
        """Validate the field tag; fp:<p> needs a prime p."""
        v = v.strip().lower()
        if v in ("q", "f2"):
            return v
        if v.startswith("fp:"):
            try:
                p = int(v[3:])
            except ValueError as e:
                raise ValueError(f"Invalid prime in field tag: {v}") from e
            if not isprime(p):
                raise ValueError(f"Field modulus must be prime, got {p}")
            return v
        raise ValueError("Field must be one of ['q', 'f2', 'fp:<p>']")


class WindowSettings(BaseSettings):
    """Bidegree windows for cochain computations."""

    input_bound: int = Field(default=4, ge=1, description="Largest total input exponent E")
    input_margin: int = Field(default=2, ge=1, description="Extra exponent budget for unknowns")
    weight_max: int = Field(default=6, ge=1, description="Largest F-weight considered")
    outputs_max: int = Field(default=4, ge=1, description="Largest L-level considered")
    persistence_delta: int = Field(default=1, ge=1, description="Look-ahead used to drop top-window cocycles")


class DiagramSettings(BaseSettings):
    """Bounds for the graph-term calculus."""

    max_vertices: int = Field(default=5, ge=1, le=6, description="Internal vertex bound")
    max_legs: int = Field(default=6, ge=2, le=7, description="Largest l + N in dimension tables")
    genus_vertex_bound: int = Field(default=5, ge=2, le=6)


class ReportSettings(BaseSettings):
    """Report emission."""

    report_format: str = Field(default="json", description="Report format: json or text")
    output_dir: str = Field(default="./reports", description="Directory for sweep tables")

    @field_validator("report_format")
    @classmethod
    def validate_report_format(cls, v: str) -> str:
        """Validate report format."""
        allowed = ["json", "text"]
        if v not in allowed:
            raise ValueError(f"Report format must be one of {allowed}")
        return v


class Settings(BaseSettings):
    """
    Main workbench settings.

    This class aggregates all configuration sections and loads from environment variables.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",  # Ignore extra fields in .env
    )

    app: AppSettings = Field(default_factory=AppSettings)
    algebra: AlgebraSettings = Field(default_factory=AlgebraSettings)
    window: WindowSettings = Field(default_factory=WindowSettings)
    diagrams: DiagramSettings = Field(default_factory=DiagramSettings)
    report: ReportSettings = Field(default_factory=ReportSettings)

    @property
    def is_ci(self) -> bool:
        """Check if running under continuous integration."""
        return self.app.environment == "ci"

    def to_dict(self) -> Dict[str, Any]:
        """Convert settings to a plain dictionary."""
        return self.model_dump()


@lru_cache()
def get_settings() -> Settings:
    """
    Get workbench settings (cached singleton).

    Returns:
        Settings: Workbench settings instance.

    Example:
        >>> from src.config.settings import get_settings
        >>> settings = get_settings()
        >>> print(settings.algebra.truncation)
        10
    """
    return Settings()


__all__ = [
    "Settings",
    "get_settings",
    "AppSettings",
    "AlgebraSettings",
    "WindowSettings",
    "DiagramSettings",
    "ReportSettings",
]
