"""
Application configuration management.

This module handles environment variables and application settings.
All configuration is loaded from environment variables (prefix SEPKIT_) with sensible defaults.
"""

import logging
import os
import sys
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict
from pythonjsonlogger import jsonlogger

TEXT_LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
JSON_LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables.

    Attributes:
        LOG_LEVEL: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        LOG_FORMAT: "text" or "json"
        ENUMERATION_LIMIT: Default candidate limit for every solver
        MAX_WITNESSES: Number of witnesses recorded per failed condition
        OUTPUT_FORMAT: Default report format of the CLI ("table" or "json")
    """

    # Logging configuration
    LOG_LEVEL: str = os.getenv("SEPKIT_LOG_LEVEL", "WARNING")
    LOG_FORMAT: str = os.getenv("SEPKIT_LOG_FORMAT", "text")

    # Solver configuration
    ENUMERATION_LIMIT: int = int(os.getenv("SEPKIT_ENUMERATION_LIMIT", str(10**6)))
    MAX_WITNESSES: int = int(os.getenv("SEPKIT_MAX_WITNESSES", "5"))

    # Output configuration
    OUTPUT_FORMAT: str = os.getenv("SEPKIT_OUTPUT_FORMAT", "table")

    model_config = SettingsConfigDict(
        env_prefix="SEPKIT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    def configure_logging(self, level: Optional[str] = None, fmt: Optional[str] = None) -> None:
        """
        Configure application logging.

        Logs go to stderr so that reports on stdout stay machine-readable.

        Args:
            level: Overrides LOG_LEVEL
            fmt: Overrides LOG_FORMAT ("text" or "json")

        Example:
            >>> settings = Settings()
            >>> settings.configure_logging(level="DEBUG", fmt="json")
        """
        level = (level or self.LOG_LEVEL).upper()
        fmt = (fmt or self.LOG_FORMAT).lower()

        handler = logging.StreamHandler(sys.stderr)
        if fmt == "json":
            handler.setFormatter(jsonlogger.JsonFormatter(JSON_LOG_FORMAT))
        else:
            handler.setFormatter(logging.Formatter(TEXT_LOG_FORMAT))

        root = logging.getLogger()
        for existing in list(root.handlers):
            root.removeHandler(existing)
        root.addHandler(handler)
        root.setLevel(getattr(logging, level, logging.WARNING))

        logger = logging.getLogger(__name__)
        logger.info(f"Logging configured with level: {level}, format: {fmt}")

    def as_dict(self) -> dict:
        """
        Get settings as a dictionary for startup logging.

        Example:
            >>> Settings().as_dict()["ENUMERATION_LIMIT"]
            1000000
        """
        return self.model_dump()


# Global settings instance
settings = Settings()
