"""Reportes escalares: retardo por nodo, potencial de información y punto de
recuperación completa."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

import numpy as np

from netcode.codec.gf2 import SymbolSet, mask_to_set, symbol_mask
from netcode.engine.runlog import RunLog
from netcode.metrics.aggregate import DEFAULT_Z, MetricsError
from netcode.metrics.curves import check_homogeneous
from netcode.topology.builders import Adjacency, Topology


@dataclass(frozen=True)
class DelayReport:
    """Retardo de los nodos que completaron; los censurados se listan aparte."""

    per_node: dict[int, int]
    censored: dict[int, int]
    mean: float
    max: Optional[int]
    worst_node: Optional[int]


def packet_delay(log: RunLog) -> DelayReport:
    """Paquetes recibidos que no permitieron recuperar un símbolo nuevo, por nodo."""
    done = {k: t.delay for k, t in log.traces.items() if not t.censored}
    censored = {k: t.delay for k, t in log.traces.items() if t.censored}
    if not done:
        return DelayReport(done, censored, math.nan, None, None)
    worst = max(sorted(done), key=lambda k: done[k])
    return DelayReport(
        per_node=done,
        censored=censored,
        mean=sum(done.values()) / len(done),
        max=done[worst],
        worst_node=worst,
    )


@dataclass(frozen=True)
class PotentialReport:
    per_neighbor: dict[int, int]
    mean: float


def information_potential(
    topology: Union[Topology, Adjacency],
    buffers: Union[np.ndarray, Mapping[int, SymbolSet]],
    node: int,
    t: int = 0,
    n_symbols: Optional[int] = None,
) -> PotentialReport:
    """|B_j \\ B_x| para cada vecino j del nodo y su media.

    Args:
        topology: Topología (se usa la ronda t) o adyacencia ya resuelta
        buffers: Matriz de máscaras (nodos x símbolos) o conjuntos por nodo
        node: Nodo x
        n_symbols: Tamaño del universo si ``buffers`` son conjuntos (por defecto,
            el mayor id + 1)

    Raises:
        MetricsError: si el nodo está aislado
    """
    adjacency = topology.adjacency(t) if isinstance(topology, Topology) else topology
    neighbors = sorted(adjacency[node])
    if not neighbors:
        raise MetricsError(f"El nodo {node} no tiene vecinos")

    if isinstance(buffers, np.ndarray):
        masks = buffers.astype(bool)
        row = masks.__getitem__
    else:
        sets = {j: _as_set(syms) for j, syms in buffers.items()}
        top = max((max(s, default=-1) for s in sets.values()), default=-1)
        n = n_symbols if n_symbols is not None else top + 1

        def row(j: int) -> np.ndarray:
            return symbol_mask(sets.get(j, frozenset()), n)

    own = row(node)
    per_neighbor = {j: int(np.count_nonzero(row(j) & ~own)) for j in neighbors}
    return PotentialReport(per_neighbor, sum(per_neighbor.values()) / len(per_neighbor))


def _as_set(symbols: SymbolSet) -> frozenset[int]:
    if isinstance(symbols, np.ndarray) and symbols.dtype == np.bool_:
        return mask_to_set(symbols)
    return frozenset(int(s) for s in symbols)


@dataclass(frozen=True)
class RecoveryPointReport:
    """Paquetes recibidos al completar; las muestras son (nodo, corrida) o corridas."""

    mean: float
    ci_half_width: float
    n_samples: int
    censored: int


def full_recovery_point(logs: Iterable[RunLog], z: float = DEFAULT_Z) -> RecoveryPointReport:
    """Media de received_count en el instante de recuperación completa."""
    logs = check_homogeneous(logs)
    points = [t.completed_at for log in logs for t in log.traces.values()]
    done = [p for p in points if p is not None]
    return _point_report(done, censored=len(points) - len(done), z=z)


def network_recovery_point(logs: Iterable[RunLog], z: float = DEFAULT_Z) -> RecoveryPointReport:
    """Paquetes recibidos hasta que el último nodo completa, promediado sobre corridas.

    En cada corrida se toma el máximo de completed_at entre los nodos. Las
    corridas con algún nodo censurado no tienen ese máximo y se cuentan en
    ``censored``.
    """
    logs = check_homogeneous(logs)
    done: list[int] = []
    censored = 0
    for log in logs:
        points = [t.completed_at for t in log.traces.values()]
        if not points or any(p is None for p in points):
            censored += 1
        else:
            done.append(max(points))
    return _point_report(done, censored=censored, z=z)


def _point_report(points: list[int], censored: int, z: float) -> RecoveryPointReport:
    done = np.array(points, dtype=float)
    if done.size == 0:
        return RecoveryPointReport(math.nan, math.nan, 0, censored)
    std = float(done.std(ddof=1)) if done.size > 1 else 0.0
    return RecoveryPointReport(
        mean=float(done.mean()),
        ci_half_width=z * std / math.sqrt(done.size),
        n_samples=int(done.size),
        censored=censored,
    )
