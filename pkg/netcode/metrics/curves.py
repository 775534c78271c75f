"""Curvas de las métricas en función de los paquetes recibidos por nodo.

Cada par (nodo, corrida) es una muestra. En recuperación y retardo la muestra
arrastra su último valor después de completar; en grado medio solo cuentan
los nodos que efectivamente recibieron el paquete x.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np

from netcode.engine.runlog import NodeTrace, RunLog
from netcode.metrics.aggregate import (
    DEFAULT_Z,
    AggregateCurve,
    MetricsError,
    MixedConfigError,
    aggregate_samples,
)


def check_homogeneous(logs: Iterable[RunLog]) -> list[RunLog]:
    """Valida que todas las corridas compartan configuración salvo la semilla.

    Raises:
        MetricsError: si no hay corridas
        MixedConfigError: si hay configuraciones distintas
    """
    logs = list(logs)
    if not logs:
        raise MetricsError("Se requiere al menos una corrida")
    key = logs[0].config.variant_key()
    for log in logs[1:]:
        if log.config.variant_key() != key:
            raise MixedConfigError("Las corridas no comparten configuración")
    return logs


def _traces(logs: Sequence[RunLog]) -> list[NodeTrace]:
    return [t for log in logs for _, t in sorted(log.traces.items())]


def _per_received(
    logs: Iterable[RunLog],
    series: Callable[[NodeTrace], list[float]],
    start: float | None,
    carry_forward: bool,
    z: float,
) -> AggregateCurve:
    traces = _traces(check_homogeneous(logs))
    rows = [([start] if start is not None else []) + list(series(t)) for t in traces]
    width = max((len(r) for r in rows), default=0)
    if width == 0:
        return AggregateCurve.empty(carry_forward=carry_forward)

    values = np.zeros((len(rows), width))
    valid = np.zeros((len(rows), width), dtype=bool)
    for i, row in enumerate(rows):
        if not row:
            continue
        values[i, : len(row)] = row
        if carry_forward:
            values[i, len(row) :] = row[-1]
            valid[i] = True
        else:
            valid[i, : len(row)] = True
    offset = 0 if start is not None else 1
    x = np.arange(offset, offset + width)
    return aggregate_samples(values, valid, x, z=z, carry_forward=carry_forward)


def recovery_curve(logs: Iterable[RunLog], z: float = DEFAULT_Z) -> AggregateCurve:
    """Símbolos recuperados medios vs paquetes recibidos (x = 0 .. max recibido)."""
    logs = list(logs)
    traces = _traces(check_homogeneous(logs))
    if not traces:
        return AggregateCurve.empty()
    width = max(t.received for t in traces) + 1
    values = np.array([[t.recovered_at(x) for x in range(width)] for t in traces], dtype=float)
    valid = np.ones_like(values, dtype=bool)
    return aggregate_samples(values, valid, np.arange(width), z=z)


def avg_degree_curve(logs: Iterable[RunLog], z: float = DEFAULT_Z) -> AggregateCurve:
    """Grado medio del x-ésimo paquete entregado (x = 1 .. max recibido)."""
    return _per_received(logs, lambda t: t.degrees, None, carry_forward=False, z=z)


def delay_curve(logs: Iterable[RunLog], z: float = DEFAULT_Z) -> AggregateCurve:
    """Retardo acumulado medio (paquetes no decodificables de inmediato) vs recibidos."""
    return _per_received(
        logs,
        lambda t: np.cumsum(~np.array(t.immediate, dtype=bool)).tolist(),
        0.0,
        carry_forward=True,
        z=z,
    )


def potential_curve(logs: Iterable[RunLog], z: float = DEFAULT_Z) -> AggregateCurve:
    """Potencial de información medio del vecindario por ronda.

    Cada corrida aporta una muestra por ronda; pasada su última ronda arrastra
    el último valor. Las rondas sin nodos con vecinos no cuentan.
    """
    logs = check_homogeneous(logs)
    width = max((len(log.potential_mean) for log in logs), default=0)
    if width == 0:
        return AggregateCurve.empty(x_label="round")
    values = np.zeros((len(logs), width))
    for i, log in enumerate(logs):
        series = log.potential_mean
        if series:
            values[i, : len(series)] = series
            values[i, len(series) :] = series[-1]
        else:
            values[i] = np.nan
    valid = ~np.isnan(values)
    return aggregate_samples(values, valid, np.arange(width), z=z, x_label="round")
