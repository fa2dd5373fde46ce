import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic_settings import BaseSettings

from core.enums.app_env import AppEnv
from core.logger import getLogger

ROOT_DIR = Path(__file__).resolve().parent.parent
logger = getLogger(__name__)
logger.debug(f"ROOT_DIR={ROOT_DIR}")

load_dotenv()


class BaseConfig(BaseSettings):
    """The Base Config/Settings"""

    # App Settings
    APP_ENV: str = AppEnv.of(os.getenv('APP_ENV', AppEnv.DEV.name)).name
    logger.debug(f"APP_ENV={APP_ENV}")
    OVERRIDE_ENV: bool = os.getenv('OVERRIDE_ENV', 'false').lower() in ('1', 'true', 'yes')

    # load .env file
    ENV_FILE_PATH: str = f"{ROOT_DIR}/.env.{APP_ENV.lower()}"
    logger.debug(f"OVERRIDE_ENV={OVERRIDE_ENV}, ENV_FILE_PATH={ENV_FILE_PATH}")

    if OVERRIDE_ENV and Path(ENV_FILE_PATH).exists():
        logger.debug(f"Loading .ENV {ENV_FILE_PATH}")
        load_dotenv(ENV_FILE_PATH, override=True)
    else:
        load_dotenv()

    APP_NAME: str = os.environ.get("APP_NAME", "AdversarialSzilard")
    APP_VERSION: str = "1.0.0"
    APP_DEBUG: bool = os.getenv('APP_DEBUG', 'false').lower() in ('1', 'true', 'yes')
    APP_HOST: str = os.getenv('APP_HOST', '0.0.0.0')
    APP_PORT: int = int(os.getenv('APP_PORT', 8000))

    # Engine Configs
    DEFAULT_KT: float = float(os.getenv('DEFAULT_KT', 1.0))
    SIMPLEX_TOLERANCE: float = 1e-12
    RENORMALIZE_TOLERANCE: float = 1e-9
    DOMINANCE_SLACK: float = 1e-12

    # Finite-size Configs
    BISECTION_TOLERANCE: float = float(os.getenv('BISECTION_TOLERANCE', 1e-10))
    BISECTION_MAX_ITERATIONS: int = int(os.getenv('BISECTION_MAX_ITERATIONS', 200))
    ENUMERATION_LIMIT: int = int(os.getenv('ENUMERATION_LIMIT', 1_000_000))

    # Simulation Configs
    SIM_CHUNK_DRAWS: int = int(os.getenv('SIM_CHUNK_DRAWS', 2 ** 20))
    SIM_WORKERS: int = int(os.getenv('SIM_WORKERS', 1))
    DEFAULT_SEED: int = int(os.getenv('DEFAULT_SEED', 20240229))

    # Output Configs
    SIGNIFICANT_DIGITS: int = 12
    CSV_SCHEMA_VERSION: str = "1"


@lru_cache()
def get_settings() -> BaseConfig:
    return BaseConfig()
