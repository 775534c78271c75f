"""Traza completa de una corrida de simulación."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional

from netcode.shared.config import ScenarioConfig


@dataclass(slots=True)
class NodeTrace:
    """Una entrada por paquete entregado al nodo (índice k = received_count k+1).

    ``completed_at`` es el received_count con el que el nodo completó los n
    símbolos; None si no completó (métricas censuradas).
    """

    node: int
    initial: int
    recovered: list[int] = field(default_factory=list)
    degrees: list[int] = field(default_factory=list)
    immediate: list[bool] = field(default_factory=list)
    completed_at: Optional[int] = None

    @property
    def received(self) -> int:
        return len(self.recovered)

    @property
    def delay(self) -> int:
        """Paquetes que no permitieron recuperar un símbolo nuevo de inmediato."""
        return self.immediate.count(False)

    @property
    def censored(self) -> bool:
        return self.completed_at is None

    @property
    def final_recovered(self) -> int:
        return self.recovered[-1] if self.recovered else self.initial

    def record(self, recovered: int, degree: int, immediate: bool) -> None:
        self.recovered.append(recovered)
        self.degrees.append(degree)
        self.immediate.append(immediate)

    def recovered_at(self, x: int) -> int:
        """Símbolos recuperados tras x paquetes recibidos (se arrastra el último valor)."""
        if x <= 0 or not self.recovered:
            return self.initial
        return self.recovered[min(x, len(self.recovered)) - 1]

    def to_dict(self) -> dict[str, Any]:
        return {
            "node": self.node,
            "initial": self.initial,
            "recovered": list(self.recovered),
            "degrees": list(self.degrees),
            "immediate": list(self.immediate),
            "completed_at": self.completed_at,
        }


@dataclass
class RunLog:
    """Resultado de ``run``: trazas por nodo, potencial por ronda y metadatos."""

    config: ScenarioConfig
    traces: dict[int, NodeTrace]
    rounds: int = 0
    transmissions: int = 0
    skipped: int = 0
    complete: bool = False
    completion_round: Optional[int] = None
    potential_raw: list[list[float]] = field(default_factory=list, repr=False)
    potential_mean: list[float] = field(default_factory=list, repr=False)

    @property
    def seed(self) -> int:
        return self.config.seed

    @property
    def n_symbols(self) -> int:
        return self.config.symbols

    def to_dict(self) -> dict[str, Any]:
        def clean(v: float) -> Optional[float]:
            return None if math.isnan(v) else round(v, 9)

        return {
            "config": self.config.model_dump(mode="json"),
            "rounds": self.rounds,
            "transmissions": self.transmissions,
            "skipped": self.skipped,
            "complete": self.complete,
            "completion_round": self.completion_round,
            "traces": {str(k): t.to_dict() for k, t in sorted(self.traces.items())},
            "potential_mean": [clean(v) for v in self.potential_mean],
            "potential_raw": [[clean(v) for v in row] for row in self.potential_raw],
        }

    def fingerprint(self) -> str:
        """SHA-256 de una serialización canónica (detecta cualquier diferencia bit a bit)."""
        payload = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()
