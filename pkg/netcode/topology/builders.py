"""Constructores de topologías estáticas.

Las listas de adyacencia son tuplas de frozensets indexadas por id de nodo,
simétricas y sin lazos. networkx se usa para conectividad, componentes y la
exportación como lista de aristas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, TypeAlias

import networkx as nx
import numpy as np
from tenacity import RetryCallState, retry, retry_if_exception_type, stop_after_attempt

from netcode.shared.logging_config import get_logger

logger = get_logger(__name__)

Adjacency: TypeAlias = tuple[frozenset[int], ...]
Edge: TypeAlias = tuple[int, int]

MAX_CONNECT_ATTEMPTS = 100


class TopologyError(ValueError):
    """Error base de topologías."""


class DisconnectedTopologyError(TopologyError):
    """El grafo generado no es conexo."""


class TopologyMode(str, Enum):
    STATIC = "static"
    DYNAMIC = "dynamic"


@dataclass
class Topology:
    """Topología estática: la adyacencia no depende de la ronda."""

    n_nodes: int
    snapshot: Adjacency
    coords: Optional[np.ndarray] = field(default=None, repr=False)
    bridge_edges: tuple[Edge, ...] = ()

    @property
    def mode(self) -> TopologyMode:
        return TopologyMode.STATIC

    def adjacency(self, t: int = 0) -> Adjacency:
        return self.snapshot

    def positions(self, t: int = 0) -> Optional[np.ndarray]:
        return self.coords

    def degrees(self, t: int = 0) -> np.ndarray:
        return np.array([len(neigh) for neigh in self.adjacency(t)])

    def to_graph(self, t: int = 0) -> nx.Graph:
        return adjacency_to_graph(self.adjacency(t))


def adjacency_to_graph(adjacency: Adjacency) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(adjacency)))
    graph.add_edges_from((u, v) for u, neigh in enumerate(adjacency) for v in neigh if u < v)
    return graph


def adjacency_from_edges(n: int, edges: Iterable[Edge]) -> Adjacency:
    neigh: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            continue
        neigh[u].add(v)
        neigh[v].add(u)
    return tuple(frozenset(s) for s in neigh)


def adjacency_from_positions(coords: np.ndarray, radius: float) -> Adjacency:
    """Vecinos = nodos a distancia euclídea <= radius."""
    diff = coords[:, None, :] - coords[None, :, :]
    within = np.einsum("ijk,ijk->ij", diff, diff) <= radius * radius
    np.fill_diagonal(within, False)
    return tuple(frozenset(int(j) for j in np.flatnonzero(row)) for row in within)


def is_symmetric(adjacency: Adjacency) -> bool:
    """Simetría e irreflexividad."""
    return all(
        u not in neigh and all(u in adjacency[v] for v in neigh)
        for u, neigh in enumerate(adjacency)
    )


def build_star(n_receivers: int) -> Topology:
    """Fuente (nodo 0) conectada a todos los receptores; receptores sin aristas entre sí."""
    if n_receivers < 1:
        raise TopologyError("Se requiere al menos un receptor")
    n = n_receivers + 1
    return Topology(n_nodes=n, snapshot=adjacency_from_edges(n, ((0, j) for j in range(1, n))))


def build_grid(rows: int, cols: int) -> Topology:
    """Grilla toroidal con vecindad de Moore: cada nodo tiene exactamente 8 vecinos.

    Raises:
        TopologyError: si rows o cols < 3 (los 8 vecinos no serían distintos)
    """
    if rows < 3 or cols < 3:
        raise TopologyError(f"Grilla {rows}x{cols} demasiado chica para 8 vecinos distintos")
    n = rows * cols
    edges = []
    for r in range(rows):
        for c in range(cols):
            for dr in (-1, 0, 1):
                for dc in (-1, 0, 1):
                    if dr or dc:
                        edges.append((r * cols + c, ((r + dr) % rows) * cols + (c + dc) % cols))
    return Topology(n_nodes=n, snapshot=adjacency_from_edges(n, edges))


def radius_for_degree(n: int, target_degree: float, arena_side: float) -> float:
    """Radio con el que el número esperado de vecinos es target_degree."""
    return math.sqrt(target_degree * arena_side * arena_side / (math.pi * n))


def _log_regeneration(retry_state: RetryCallState) -> None:
    logger.debug("topology_regenerated", attempt=retry_state.attempt_number)


@retry(
    reraise=True,
    stop=stop_after_attempt(MAX_CONNECT_ATTEMPTS),
    retry=retry_if_exception_type(DisconnectedTopologyError),
    before_sleep=_log_regeneration,
)
def _connected_geometric(
    n: int, radius: float, arena_side: float, rng: np.random.Generator
) -> tuple[np.ndarray, Adjacency]:
    coords = rng.uniform(0.0, arena_side, size=(n, 2))
    adjacency = adjacency_from_positions(coords, radius)
    if not nx.is_connected(adjacency_to_graph(adjacency)):
        raise DisconnectedTopologyError(f"Grafo geométrico de {n} nodos no conexo (r={radius:.2f})")
    return coords, adjacency


def build_random_geometric(
    n: int,
    target_degree: float,
    rng: np.random.Generator,
    arena_side: float = 100.0,
    radius: Optional[float] = None,
) -> Topology:
    """Posiciones uniformes en un cuadrado; se regenera hasta que el grafo sea conexo.

    Args:
        n: Número de nodos (>= 2)
        target_degree: Densidad media buscada
        rng: Generador de la topología
        arena_side: Lado del área (m)
        radius: Radio explícito; por defecto radius_for_degree

    Raises:
        DisconnectedTopologyError: si tras 100 intentos no se obtuvo un grafo conexo
    """
    if n < 2:
        raise TopologyError("Se requieren al menos 2 nodos")
    if target_degree <= 0:
        raise TopologyError("target_degree debe ser > 0")
    r = radius if radius is not None else radius_for_degree(n, target_degree, arena_side)
    coords, adjacency = _connected_geometric(n, r, arena_side, rng)
    return Topology(n_nodes=n, snapshot=adjacency, coords=coords)


def build_clustered(
    n: int,
    k_clusters: int,
    bridges_per_pair: int,
    rng: np.random.Generator,
    target_degree: float = 8.0,
    arena_side: float = 100.0,
) -> Topology:
    """k clusters densos (geométricos aleatorios) unidos en anillo por aristas puente.

    El cluster i ocupa los nodos [i*m, (i+1)*m) con m = n/k y su área se
    desplaza en x para que las posiciones no se superpongan.
    """
    if k_clusters < 2:
        raise TopologyError("Se requieren al menos 2 clusters")
    if n % k_clusters:
        raise TopologyError(f"n={n} no es divisible por k={k_clusters}")
    m = n // k_clusters
    if m < 2:
        raise TopologyError("Cada cluster necesita al menos 2 nodos")
    if bridges_per_pair > m * m:
        raise TopologyError(f"No hay {bridges_per_pair} puentes distintos entre clusters de {m}")

    edges: list[Edge] = []
    coords = np.zeros((n, 2))
    for i in range(k_clusters):
        cluster = build_random_geometric(m, target_degree, rng, arena_side=arena_side)
        offset = i * m
        coords[offset : offset + m] = cluster.coords + np.array([i * 2 * arena_side, 0.0])
        edges.extend(
            (offset + u, offset + v) for u, neigh in enumerate(cluster.snapshot) for v in neigh if u < v
        )

    pairs = [(i, (i + 1) % k_clusters) for i in range(k_clusters if k_clusters > 2 else 1)]
    bridges: list[Edge] = []
    for a, b in pairs:
        chosen: set[Edge] = set()
        while len(chosen) < bridges_per_pair:
            u = a * m + int(rng.integers(m))
            v = b * m + int(rng.integers(m))
            chosen.add((min(u, v), max(u, v)))
        bridges.extend(sorted(chosen))

    return Topology(
        n_nodes=n,
        snapshot=adjacency_from_edges(n, edges + bridges),
        coords=coords,
        bridge_edges=tuple(bridges),
    )


def components_without(topology: Topology, edges: Iterable[Edge], t: int = 0) -> int:
    """Número de componentes conexas tras quitar las aristas indicadas."""
    graph = topology.to_graph(t)
    graph.remove_edges_from(edges)
    return nx.number_connected_components(graph)


def export_edge_list(topology: Topology, path: str | Path, t: int = 0) -> Path:
    """Escribe la adyacencia de la ronda t como lista de aristas 'u v' (u < v)."""
    path = Path(path)
    graph = topology.to_graph(t)
    ordered = nx.Graph()
    ordered.add_nodes_from(sorted(graph.nodes))
    ordered.add_edges_from(sorted((min(u, v), max(u, v)) for u, v in graph.edges))
    nx.write_edgelist(ordered, path, data=False)
    return path
