"""Environment-backed settings for the library, CLI and API."""

import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

ROOT_DIR = Path(__file__).parent.parent


class Settings(BaseModel):
    """Runtime settings read from the environment (and a local .env file)."""

    log_dir: Path = Field(default=ROOT_DIR / "logs")
    log_level: str = Field(default="INFO")
    database_url: str = Field(default=f"sqlite:///{ROOT_DIR / 'results.db'}")
    threads: int = Field(default=1, ge=1)
    default_alpha: float = Field(default=0.05, gt=0.0, lt=1.0)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Build the settings once per process.

    Returns:
        Settings: values from LOG_DIR, LOG_LEVEL, DATABASE_URL, CGLEARN_THREADS and
        CGLEARN_DEFAULT_ALPHA, falling back to the field defaults
    """
    values = {
        "log_dir": os.getenv("LOG_DIR"),
        "log_level": os.getenv("LOG_LEVEL"),
        "database_url": os.getenv("DATABASE_URL"),
        "threads": os.getenv("CGLEARN_THREADS"),
        "default_alpha": os.getenv("CGLEARN_DEFAULT_ALPHA"),
    }
    return Settings(**{key: value for key, value in values.items() if value})
