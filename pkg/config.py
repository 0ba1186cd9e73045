# Environment-driven settings, one class per deployment state.
from functools import lru_cache
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class BaseConfig(BaseSettings):
    ENV_STATE: Optional[str] = None

    """Loads the dotenv file. Including this is necessary to get
    pydantic to load a .env file."""
    model_config = SettingsConfigDict(env_file=".env", extra="ignore")


class GlobalConfig(BaseConfig):
    JOBS: Optional[int] = None
    LOG_DIR: str = "logs"
    LOG_LEVEL: str = "INFO"
    LOG_TO_FILE: bool = True
    DEFAULT_C: float = 0.75
    DEFAULT_MIN_LEN: int = 2
    DEFAULT_K_MAX: int = 20

    model_config = SettingsConfigDict(env_prefix="BLOCKSEG_")


class DevConfig(GlobalConfig):
    model_config = SettingsConfigDict(env_prefix="BLOCKSEG_")


class ProdConfig(GlobalConfig):
    LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(env_prefix="BLOCKSEG_")


class TestConfig(GlobalConfig):
    JOBS: Optional[int] = 1
    LOG_TO_FILE: bool = False
    LOG_LEVEL: str = "DEBUG"

    model_config = SettingsConfigDict(env_prefix="BLOCKSEG_TEST_")


@lru_cache()
def get_config(env_state: Optional[str]):
    """Instantiate config based on the environment."""
    configs = {"dev": DevConfig, "prod": ProdConfig, "test": TestConfig}
    return configs[env_state or "dev"]()


config = get_config(BaseConfig().ENV_STATE)
