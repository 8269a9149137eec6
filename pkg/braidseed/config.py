from dataclasses import dataclass

from .logger import LogLevel


@dataclass
class Settings:
    jobs: int = 1
    survey_budget: int = 200_000
    max_terms: int = 20_000
    log_level: LogLevel = LogLevel.WARNING
    check: bool = False
