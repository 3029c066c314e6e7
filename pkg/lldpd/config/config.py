from functools import lru_cache

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class FitConfig(BaseModel):
    tolerance: float = Field(default=1e-9, gt=0)
    gradient_tolerance: float = Field(default=1e-7, gt=0)
    max_iterations: int = Field(default=500, ge=1)
    simplex_xatol: float = Field(default=1e-6, gt=0)
    hessian_step: float = Field(default=1e-5, gt=0)


class SimulationConfig(BaseModel):
    replications: int = Field(default=1000, ge=1)
    seed: int = 20240607
    # None이면 os.cpu_count() 사용
    workers: int | None = None
    contaminated_count: int = Field(default=3, ge=1)


class OutputConfig(BaseModel):
    decimals: int = Field(default=5, ge=0)
    format: str = "text"


class LoggingConfig(BaseModel):
    level: str = "INFO"


class Settings(BaseSettings):
    fit: FitConfig = FitConfig()
    simulation: SimulationConfig = SimulationConfig()
    output: OutputConfig = OutputConfig()
    logging: LoggingConfig = LoggingConfig()

    model_config = SettingsConfigDict(
        env_prefix="LLDPD_",
        env_file="lldpd/config/.env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",
        extra="ignore",
    )


@lru_cache
def get_settings():
    return Settings()


settings: Settings = get_settings()
