"""
Configuration settings for the weighted deep polynomial toolkit
"""

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings"""

    # Output
    output_dir: str = "output"

    # Logging
    log_level: str = "INFO"
    log_json: bool = True

    # Training defaults
    default_samples: int = 600
    default_restarts: int = 5
    default_rel_tol: float = 1e-12
    default_max_iters: int = 200000
    default_step: float = 1e-3
    default_seed: int = 0

    # Trainer safeguards
    max_step_halvings: int = 40
    max_init_redraws: int = 100
    validation_factor: int = 4  # validation grid is this many times denser

    # Graph evaluation
    overflow_threshold: float = 1e300

    # Quadrature and potential theory
    quadrature_nodes: int = 128
    restricted_range_points: int = 4096
    solver_tolerance: float = 1e-10

    # Field search (reduced inner budget)
    search_restarts: int = 3
    search_max_iters: int = 20000

    # Airy golden table
    golden_step: float = 0.05
    golden_dps: int = 50
    golden_filename: str = "airy_bi_golden.csv"

    class Config:
        env_file = ".env"
        env_prefix = "DEEPPOLY_"
        case_sensitive = False


# Global settings instance
settings = Settings()
