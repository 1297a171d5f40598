from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Literal, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import ConfigError

load_dotenv()


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="FOONKIT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log_level: str = "INFO"
    # FOONKIT_CONFIG: verb classes, skip states, weight scheme, normalisation lists
    config: Optional[Path] = None

    alpha: float = 0.05
    cohen_d: float = 0.3
    t_test: Literal["welch", "student"] = "welch"
    effective_n: Literal["count", "kish"] = "count"

    match_top_k: int = 5
    workers: int = 1

    api_host: str = "127.0.0.1"
    api_port: int = 3000


def _lowered(values: List[str]) -> List[str]:
    return [" ".join(value.split()).lower() for value in values if value and value.strip()]


class GenerationScheme(BaseModel):
    source_target_verbs: List[str] = Field(default_factory=lambda: ["pour", "add", "place", "transfer"])
    utensil_verbs: List[str] = Field(default_factory=lambda: ["mix", "stir", "beat", "whisk"])
    housekeeping_states: List[str] = Field(default_factory=lambda: ["clean", "dirty", "empty"])

    @field_validator("source_target_verbs", "utensil_verbs", "housekeeping_states")
    @classmethod
    def _normalise(cls, value: List[str]) -> List[str]:
        return _lowered(value)


class WeightScheme(BaseModel):
    proficiency: Dict[str, float] = Field(
        default_factory=lambda: {
            "I have no experience in cooking": 1.0,
            "Beginner home cook": 1.5,
            "Intermediate home cook": 2.0,
            "Advanced home cook": 2.5,
            "I have received culinary training": 3.0,
        }
    )
    recipe_sources: List[str] = Field(
        default_factory=lambda: [
            "I mostly use recipes that family or friends shared",
            "I look for recipes online",
            "I follow recipes from cookbooks",
            "I only use ingredients I have available",
        ]
    )
    familiarity_bonus: Dict[str, float] = Field(
        default_factory=lambda: {
            "I have made this exact dish": 0.5,
            "Yes, but I left out some of the ingredients listed": 0.0,
            "Yes, but I added some ingredients not listed": 0.0,
            "No": 0.0,
        }
    )

    @field_validator("proficiency")
    @classmethod
    def _positive_weights(cls, value: Dict[str, float]) -> Dict[str, float]:
        if not value:
            raise ValueError("proficiency scale must not be empty")
        if any(weight <= 0 for weight in value.values()):
            raise ValueError("proficiency weights must be positive")
        return value


class NormalizationScheme(BaseModel):
    unit_words: List[str] = Field(
        default_factory=lambda: [
            "tsp", "teaspoon", "tbsp", "tablespoon", "cup", "oz", "ounce", "lb", "pound",
            "g", "gram", "kg", "ml", "l", "liter", "litre", "pinch", "dash", "clove",
            "slice", "piece", "can", "package", "stick", "bunch", "sprig", "handful",
        ]
    )
    stop_words: List[str] = Field(
        default_factory=lambda: [
            "a", "an", "the", "of", "and", "or", "to", "for", "with", "in", "into",
            "fresh", "large", "small", "medium", "chopped", "diced", "minced", "sliced",
            "finely", "taste", "optional", "about", "whole", "ground", "beaten",
        ]
    )

    @field_validator("unit_words", "stop_words")
    @classmethod
    def _normalise(cls, value: List[str]) -> List[str]:
        return _lowered(value)


class Scheme(BaseModel):
    generation: GenerationScheme = Field(default_factory=GenerationScheme)
    weights: WeightScheme = Field(default_factory=WeightScheme)
    normalization: NormalizationScheme = Field(default_factory=NormalizationScheme)


def load_scheme(path: Path) -> Scheme:
    try:
        raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file {path} is not valid YAML/JSON: {exc}") from exc
    try:
        return Scheme.model_validate(raw or {})
    except ValidationError as exc:
        raise ConfigError(f"config file {path} is invalid: {exc}") from exc


@lru_cache
def get_settings() -> Settings:
    return Settings()


@lru_cache
def get_scheme() -> Scheme:
    settings = get_settings()
    if settings.config is None:
        return Scheme()
    return load_scheme(settings.config)
