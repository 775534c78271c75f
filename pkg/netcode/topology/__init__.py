"""Topologías de los escenarios: estrella, grilla toroidal, geométrica
aleatoria, clusters y movilidad random waypoint.

Uso:
    from netcode.topology import build_grid

    topo = build_grid(10, 10)
    topo.adjacency(0)[0]  # vecinos del nodo 0
"""

from __future__ import annotations

from netcode.topology.builders import (
    MAX_CONNECT_ATTEMPTS,
    Adjacency,
    DisconnectedTopologyError,
    Topology,
    TopologyError,
    TopologyMode,
    adjacency_to_graph,
    build_clustered,
    build_grid,
    build_random_geometric,
    build_star,
    components_without,
    export_edge_list,
    is_symmetric,
    radius_for_degree,
)
from netcode.topology.mobility import (
    MobileTopology,
    RWP_DENSITY_FACTOR,
    MobilityState,
    build_mobile,
    step_mobility,
)

__all__ = [
    # Tipos
    "Adjacency",
    "Topology",
    "TopologyMode",
    "MobileTopology",
    "MobilityState",
    # Constructores
    "build_star",
    "build_grid",
    "build_random_geometric",
    "build_clustered",
    "build_mobile",
    "step_mobility",
    "radius_for_degree",
    # Utilidades
    "adjacency_to_graph",
    "components_without",
    "export_edge_list",
    "is_symmetric",
    "MAX_CONNECT_ATTEMPTS",
    "RWP_DENSITY_FACTOR",
    # Errores
    "TopologyError",
    "DisconnectedTopologyError",
]
