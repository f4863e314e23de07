"""
Configuration management using pydantic-settings
"""

from typing import Optional, Tuple

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource


class Settings(BaseSettings):
    """Run settings; values come from constructor arguments (CLI flags) only"""

    # Logging
    LOG_LEVEL: str = Field(default="WARNING", description="Logging level")
    LOG_FILE: Optional[str] = Field(default=None, description="Optional log file path")

    # Sweeps
    SWEEP_MAX_PREDICTED_CELLS: int = Field(
        default=10**6,
        description="Skip sweep rows whose predicted cell count exceeds this guard"
    )
    SWEEP_WORKERS: int = Field(default=1, description="Worker processes for sweeps (1 runs inline)")

    # Arrangements
    WITNESS_POINTS: int = Field(default=8, description="Interior points kept per cell during insertion")

    # Verification suites
    VERIFY_SEED: int = Field(default=0, description="Base seed for random verification instances")
    LEMMA6_INSTANCES: int = Field(default=20, description="Random base functions in the lift suite")
    LEMMA6_MAX_M: int = Field(default=5, description="Largest sawtooth size in the lift suite")
    ORACLE_INSTANCES: int = Field(default=30, description="Random instances per oracle cross-check")
    ORACLE_RESOLUTION: int = Field(default=41, description="Grid points per axis for the sampling oracle")
    RANDOM_COEFFICIENT_BOUND: int = Field(
        default=5,
        description="Numerator bound for random coefficients in generated instances"
    )
    MAX_EXHAUSTIVE_LINES: int = Field(default=5, description="Largest line family for exhaustive path search")

    @field_validator('LOG_LEVEL')
    @classmethod
    def validate_log_level(cls, v):
        if v not in ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']:
            raise ValueError('LOG_LEVEL must be a valid logging level')
        return v

    @field_validator('SWEEP_WORKERS', 'WITNESS_POINTS', 'LEMMA6_INSTANCES', 'LEMMA6_MAX_M',
                     'ORACLE_INSTANCES', 'RANDOM_COEFFICIENT_BOUND', 'MAX_EXHAUSTIVE_LINES')
    @classmethod
    def validate_positive(cls, v):
        if v < 1:
            raise ValueError('must be at least 1')
        return v

    @field_validator('ORACLE_RESOLUTION')
    @classmethod
    def validate_resolution(cls, v):
        if v < 2:
            raise ValueError('ORACLE_RESOLUTION must be at least 2')
        return v

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls,
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)

    model_config = {
        "case_sensitive": True,
        "extra": "forbid",
    }
