# ==============================================================================
# config/settings.py - Configuration management
# ==============================================================================

import os
from typing import Optional

from dotenv import load_dotenv

from exceptions import InvalidConfigurationError

load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        raise InvalidConfigurationError(name, raw, "expected an integer")
    if value < 0:
        raise InvalidConfigurationError(name, raw, "must be non-negative")
    return value


class Settings:
    """Application settings and configuration"""

    # App settings
    APP_NAME: str = "essig"
    APP_VERSION: str = "0.1.0"

    STORE_FILENAME: str = "essig.db"

    def __init__(self):
        # Cache settings
        self.CACHE_DIR: str = os.getenv("ESSIG_CACHE", ".essig-cache")

        # Computation limits
        self.POINT_BUDGET: int = _int_env("ESSIG_POINT_BUDGET", 10 ** 6)
        self.AMBIENT_LIMIT: int = _int_env("ESSIG_AMBIENT_LIMIT", 10 ** 6)
        self.JOBS: int = max(1, _int_env("ESSIG_JOBS", 1))

        # Sweep store settings
        self.DATABASE_URL: Optional[str] = os.getenv("ESSIG_DATABASE_URL") or None

        # Logging settings
        self.ENVIRONMENT: str = os.getenv("ENVIRONMENT", "development").lower()
        self.LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING").upper()
        self.LOG_FILE: Optional[str] = os.getenv("LOG_FILE") or None
        self.LOG_JSON: bool = os.getenv("LOG_JSON", "False").lower() == "true"

    @property
    def store_url(self) -> str:
        """SQLAlchemy URL of the sweep store (SQLite inside the cache dir by default)"""
        if self.DATABASE_URL:
            return self.DATABASE_URL
        return f"sqlite:///{os.path.join(self.CACHE_DIR, self.STORE_FILENAME)}"


def get_settings() -> Settings:
    """Factory for a Settings object reflecting the current environment"""
    return Settings()
