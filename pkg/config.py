"""
Configuration

Runtime settings read from the environment (optionally a .env file).
Command-line flags override these values.
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from errors import ConfigError

DEFAULT_KNIT_CAP = 512
DEFAULT_LENGTH_CAP = 64
DEFAULT_SLICE_SEARCH_CAP = 200000
DEFAULT_PRIME = 32003


def _int_setting(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


@dataclass
class Settings:
    """Tunables of the workbench."""

    knit_cap: int = DEFAULT_KNIT_CAP
    length_cap: int = DEFAULT_LENGTH_CAP
    slice_search_cap: int = DEFAULT_SLICE_SEARCH_CAP
    default_prime: int = DEFAULT_PRIME
    log_level: str = "WARNING"
    log_file: Optional[str] = None
    corpus_path: str = str(Path(__file__).parent / "data" / "corpus.json")

    @classmethod
    def from_env(cls, load_dotenv_file: bool = True) -> "Settings":
        """
        Build settings from environment variables.

        Args:
            load_dotenv_file: Whether to read a .env file first

        Returns:
            Settings populated from RELEXT_* variables

        Raises:
            ConfigError: If a variable is malformed
        """
        if load_dotenv_file:
            load_dotenv()
        level = os.environ.get("RELEXT_LOG_LEVEL", "WARNING").upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ConfigError(f"RELEXT_LOG_LEVEL must be a logging level name, got {level!r}")
        return cls(
            knit_cap=_int_setting("RELEXT_KNIT_CAP", DEFAULT_KNIT_CAP),
            length_cap=_int_setting("RELEXT_LENGTH_CAP", DEFAULT_LENGTH_CAP),
            slice_search_cap=_int_setting("RELEXT_SLICE_SEARCH_CAP", DEFAULT_SLICE_SEARCH_CAP),
            default_prime=_int_setting("RELEXT_PRIME", DEFAULT_PRIME),
            log_level=level,
            log_file=os.environ.get("RELEXT_LOG_FILE") or None,
            corpus_path=os.environ.get("RELEXT_CORPUS", cls.corpus_path),
        )
