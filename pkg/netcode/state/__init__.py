"""Buffers por nodo y álgebra de vecindario (B_x, B_j, B̄_j, R(C), R*(C)).

Uso:
    from netcode.state import NodeBuffer, NeighborTable, recoverers, holders
"""

from __future__ import annotations

from netcode.state.buffers import (
    NeighborTable,
    NodeBuffer,
    StateError,
    UnknownNeighborError,
    extension_gains,
    holders,
    missing_counts,
    missing_for,
    neighborhood_potential,
    recoverers,
)

__all__ = [
    "NodeBuffer",
    "NeighborTable",
    "missing_for",
    "missing_counts",
    "recoverers",
    "holders",
    "extension_gains",
    "neighborhood_potential",
    "StateError",
    "UnknownNeighborError",
]
