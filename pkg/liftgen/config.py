from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .sampler.domain_recursion import SELECTION_MODES


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="LIFTGEN_", env_file=".env", extra="ignore")

    threads: int = Field(default=1, ge=1)
    oracle_max_domain: int = Field(default=6, ge=1)
    oracle_max_atoms: int = Field(default=30, ge=1)
    exp_precision: float = Field(default=1e-12, gt=0.0, lt=1.0)
    element_selection: str = "strongest"
    alpha: float = Field(default=0.05, gt=0.0, lt=1.0)
    validation_chunk: int = Field(default=1000, ge=1)
    log_dir: str = "logs"
    log_retention_days: int = Field(default=3, ge=0)
    cache_size: int = Field(default=200000, ge=1)

    api_host: str = "0.0.0.0"
    api_port: int = 8000

    @field_validator('element_selection', mode='before')
    @classmethod
    def validate_selection(cls, v):
        v = str(v).strip().lower()
        if v not in SELECTION_MODES:
            raise ValueError(f"element_selection must be one of {', '.join(SELECTION_MODES)}")
        return v

    @field_validator('alpha', 'exp_precision', mode='before')
    @classmethod
    def validate_unit_interval(cls, v):
        if not 0.0 < float(v) < 1.0:
            raise ValueError('value must lie strictly between 0 and 1')
        return v
