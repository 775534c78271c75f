"""Sistema de configuración centralizado para netcode.

Usa pydantic / pydantic-settings para validación y carga desde:
1. Archivos TOML de escenario (ScenarioConfig.from_toml)
2. Variables de entorno
3. Archivos .env.local
"""

from __future__ import annotations

import math
import sys
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib


class ScenarioKind(str, Enum):
    """Escenarios soportados."""

    SINGLE_HOP = "single_hop"
    GRID = "grid"
    RANDOM = "random"
    CLUSTERED = "clustered"
    MOBILE = "mobile"

    @property
    def is_multi_hop(self) -> bool:
        return self is not ScenarioKind.SINGLE_HOP


class AlgorithmKind(str, Enum):
    """Algoritmos de selección de paquetes."""

    SYSTEMATIC_RLNC = "systematic_rlnc"
    ANC = "anc"
    OPPORTUNISTIC = "opportunistic"
    GREEDY = "greedy"
    EQUALIZING = "equalizing"


class DecoderKind(str, Enum):
    """Decodificadores del lado receptor."""

    SIMPLE = "simple"
    FULL = "full"


class AncRank(str, Enum):
    """Origen del r con el que ANC evalúa D(r)."""

    OWN = "own"
    RECEIVERS = "receivers"


class Scheduling(str, Enum):
    """Orden de las oportunidades de transmisión dentro de una ronda."""

    SEQUENTIAL = "sequential"
    RANDOM = "random"


class LogLevel(str, Enum):
    """Niveles de logging."""

    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class ScenarioConfig(BaseModel):
    """Configuración de una corrida de simulación.

    En single_hop, ``n_nodes`` es el número de receptores (la fuente es el
    nodo 0 y no cuenta). En multi-hop cada nodo genera un símbolo, por lo que
    ``n_symbols`` debe coincidir con ``n_nodes``.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    scenario: ScenarioKind = Field(default=ScenarioKind.SINGLE_HOP)
    algorithm: AlgorithmKind = Field(default=AlgorithmKind.GREEDY)
    decoder: DecoderKind = Field(default=DecoderKind.SIMPLE)

    n_nodes: int = Field(default=100, ge=1, le=5000)
    n_symbols: Optional[int] = Field(default=None, ge=1, le=5000)
    erasure_p: float = Field(default=0.0, ge=0.0, le=1.0)
    scheduling: Scheduling = Field(default=Scheduling.SEQUENTIAL)
    degree_cap: Optional[int] = Field(default=None, ge=1)
    greedy_strict: bool = Field(
        default=True, description="Greedy solo agrega símbolos que aumentan |R(C)|"
    )
    seed: int = Field(default=0, ge=0)
    max_rounds: int = Field(default=2000, ge=1)

    # Topología
    grid_rows: Optional[int] = Field(default=None, ge=3)
    grid_cols: Optional[int] = Field(default=None, ge=3)
    target_degree: float = Field(default=8.0, gt=0.0)
    arena_side: float = Field(default=100.0, gt=0.0, description="Lado del área cuadrada (m)")
    radius: Optional[float] = Field(default=None, gt=0.0, description="Radio de comunicación (m)")
    n_clusters: int = Field(default=4, ge=2)
    bridges_per_pair: int = Field(default=1, ge=1)

    # Movilidad
    speed_min: float = Field(default=2.0, gt=0.0)
    speed_max: float = Field(default=4.0, gt=0.0)
    dt: float = Field(default=1.0, gt=0.0, description="Segundos simulados por ronda")

    # ANC
    anc_rank: Optional[AncRank] = Field(
        default=None,
        description="own: recuperados del emisor; receivers: cuantil de los vecinos incompletos. "
        "Por defecto receivers en single_hop y own en multi-hop",
    )
    anc_quantile: float = Field(default=0.05, ge=0.0, le=1.0)
    degree_table: Optional[dict[int, int]] = Field(
        default=None, description="Sobrescritura explícita de pares (r, D(r))"
    )

    @field_validator("degree_table")
    @classmethod
    def validate_degree_table(cls, v: Optional[dict[int, int]]) -> Optional[dict[int, int]]:
        if v is None:
            return v
        for r, d in v.items():
            if r < 0 or d < 1:
                raise ValueError(f"Par inválido en degree_table: ({r}, {d})")
        return v

    @model_validator(mode="after")
    def validate_scenario(self) -> "ScenarioConfig":
        if self.scenario.is_multi_hop:
            if self.n_symbols is None:
                object.__setattr__(self, "n_symbols", self.n_nodes)
            elif self.n_symbols != self.n_nodes:
                raise ValueError("En multi-hop n_symbols debe ser igual a n_nodes")
            if self.erasure_p != 0.0:
                raise ValueError("erasure_p solo se admite en single_hop")
            if self.n_nodes < 2:
                raise ValueError("Un escenario multi-hop requiere al menos 2 nodos")
        elif self.n_symbols is None:
            object.__setattr__(self, "n_symbols", 100)

        if self.scenario is ScenarioKind.GRID:
            side = math.isqrt(self.n_nodes)
            rows = self.grid_rows or (side if side * side == self.n_nodes else None)
            cols = self.grid_cols or (self.n_nodes // rows if rows else None)
            if rows is None or cols is None or rows * cols != self.n_nodes:
                raise ValueError(
                    f"n_nodes={self.n_nodes} no corresponde a una grilla grid_rows x grid_cols"
                )
            object.__setattr__(self, "grid_rows", rows)
            object.__setattr__(self, "grid_cols", cols)

        if self.scenario is ScenarioKind.CLUSTERED and self.n_nodes % self.n_clusters:
            raise ValueError("n_nodes debe ser divisible por n_clusters")

        if self.speed_min > self.speed_max:
            raise ValueError("speed_min no puede superar speed_max")
        return self

    @property
    def anc_rank_source(self) -> AncRank:
        """Origen efectivo de r para ANC."""
        if self.anc_rank is not None:
            return self.anc_rank
        return AncRank.OWN if self.scenario.is_multi_hop else AncRank.RECEIVERS

    @property
    def symbols(self) -> int:
        """Tamaño del universo de símbolos (ya resuelto por el validador)."""
        assert self.n_symbols is not None
        return self.n_symbols

    def variant_key(self) -> dict[str, Any]:
        """Configuración sin la semilla (identifica una variante de campaña)."""
        return self.model_dump(mode="json", exclude={"seed"})

    @classmethod
    def from_toml(cls, path: str | Path, **overrides: Any) -> "ScenarioConfig":
        """Carga un escenario desde TOML; ``overrides`` (no None) gana sobre el archivo.

        Las claves de campaña se ignoran salvo ``seed``, que pasa a ser la
        semilla de la corrida.
        """
        data, options = split_campaign_keys(load_toml(path))
        if options.seed is not None:
            data["seed"] = options.seed
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.model_validate(data)


def load_toml(path: str | Path) -> dict[str, Any]:
    """Lee un archivo TOML y normaliza la tabla degree_table a claves enteras."""
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    table = data.get("degree_table")
    if isinstance(table, dict):
        data["degree_table"] = {int(k): int(v) for k, v in table.items()}
    return data


class CampaignOptions(BaseModel):
    """Claves de campaña admitidas en el archivo TOML (espejo de los flags)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    runs: Optional[int] = Field(default=None, ge=1)
    workers: Optional[int] = Field(default=None, ge=1, le=256)
    out: Optional[Path] = None
    figure: Optional[str] = None
    max_incomplete: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    seed: Optional[int] = Field(default=None, ge=0)


CAMPAIGN_KEYS = frozenset(CampaignOptions.model_fields)


def split_campaign_keys(data: dict[str, Any]) -> tuple[dict[str, Any], CampaignOptions]:
    """Separa las claves de campaña de las de escenario.

    ``seed`` es la semilla base de la campaña; cada corrida la reemplaza por
    la suya.

    Raises:
        ValidationError: si alguna clave de campaña es inválida
    """
    scenario = {k: v for k, v in data.items() if k not in CAMPAIGN_KEYS}
    options = CampaignOptions.model_validate({k: v for k, v in data.items() if k in CAMPAIGN_KEYS})
    return scenario, options


class LoggingConfig(BaseSettings):
    """Configuración de logging."""

    model_config = SettingsConfigDict(
        env_prefix="LOG_",
        env_file=".env.local",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    level: LogLevel = Field(default=LogLevel.INFO)
    format: Literal["json", "console"] = Field(default="console")


class CampaignSettings(BaseSettings):
    """Valores por defecto de las campañas de experimentos."""

    model_config = SettingsConfigDict(
        env_prefix="NETCODE_",
        env_file=".env.local",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    runs: int = Field(default=10, ge=1)
    seed: int = Field(default=0, ge=0, description="Semilla base si no llega por flag ni por archivo")
    workers: int = Field(default=1, ge=1, le=256)
    out_dir: str = Field(default="./results")
    max_incomplete_fraction: float = Field(default=0.0, ge=0.0, le=1.0)
    ci_z: float = Field(default=1.96, gt=0.0, description="Cuantil normal del IC (95%)")


class Settings(BaseSettings):
    """Configuración principal de la aplicación."""

    model_config = SettingsConfigDict(
        env_file=".env.local",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    campaign: CampaignSettings = Field(default_factory=CampaignSettings)


@lru_cache
def get_settings() -> Settings:
    """Obtiene la configuración de la aplicación (singleton)."""
    return Settings()
