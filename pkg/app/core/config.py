from pydantic_settings import BaseSettings, SettingsConfigDict
import os


class Settings(BaseSettings):
    log_level: str = "INFO"
    # "console" for flat human-readable lines, "json" for machine ingestion
    log_renderer: str = "console"

    # Experiment defaults, overridable per run from the CLI
    default_seed: int = 0
    default_samples: int = 200
    default_search_box: int = 2

    # Integer coordinates of random samples are drawn from [-bound, bound]
    random_coefficient_bound: int = 3

    # Regular-subgroup enumeration is refused beyond this group order;
    # order 10 takes tens of seconds, order 12 does not finish at desk scale
    enumeration_budget: int = 10

    model_config = SettingsConfigDict(
        env_prefix="HOPF_GALOIS_",
        env_file=f"config/{os.getenv('ENV', 'local')}.env",
        case_sensitive=False,
        extra="ignore",
    )


settings = Settings()
