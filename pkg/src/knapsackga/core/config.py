from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from knapsackga.core.logging import logger

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


class KnapsackSettings(BaseSettings):
    KNAP_SEED: int | None = Field(
        default=None,
        ge=0,
        description="Fallback seed for every subcommand when --seed is not given.",
    )
    KNAP_LOG_LEVEL: str = Field(
        default="INFO",
        description=(
            "Logging level for the command line. "
            "Options: TRACE, DEBUG, INFO, SUCCESS, WARNING, ERROR, CRITICAL"
        ),
    )
    KNAP_ERROR_LOG_DIR: str | None = Field(
        default=None,
        description="Directory for rotated error logs. Unset means no log files.",
    )
    KNAP_ORACLE_LIMIT: int = Field(
        default=30,
        ge=1,
        description="Largest weight count the brute-force oracle will enumerate.",
    )
    KNAP_JOBS: int = Field(
        default=1, ge=1, description="Default worker count for sweeps and attacks."
    )
    KNAP_POPULATION_SIZE: int = Field(default=50, ge=2)
    KNAP_MAX_GENERATIONS: int = Field(default=1000, ge=1)
    KNAP_BLOCK_SIZE: int = Field(
        default=8, ge=1, description="Default key length in bits for keygen."
    )
    KNAP_KEY_MAGNITUDE: int = Field(
        default=10, ge=1, description="Bit width of the random increments in keygen."
    )

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    @field_validator("KNAP_LOG_LEVEL", mode="before")
    def parse_log_level(cls, v) -> str:
        level = str(v).strip().upper()
        if level not in LOG_LEVELS:
            raise ValueError(
                f"KNAP_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got {v!r}"
            )
        return level

    @property
    def seed(self) -> int:
        return self.KNAP_SEED if self.KNAP_SEED is not None else 0

    def print_settings(self):
        logger.debug("Current settings:")
        logger.debug(self.model_dump())


def get_settings() -> KnapsackSettings:
    return KnapsackSettings()
