"""Buffers por nodo y álgebra de conjuntos sobre el vecindario.

Notación:
- B_x: símbolos recuperados por el nodo que codifica (``own``)
- B_j: símbolos recuperados por el vecino j (una fila de ``NeighborTable.masks``)
- B̄_j = B_x \\ (B_j ∩ B_x)
- R(C) = {j: |C| - |B_j ∩ C| = 1}, R*(C) = {j: C ⊆ B_j}

Todos los conjuntos son máscaras booleanas de longitud n, de modo que R(C) y
R*(C) se reducen a contar bits faltantes por fila.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from netcode.codec.gf2 import SymbolId, SymbolSet, mask_to_set, symbol_mask


class StateError(ValueError):
    """Error base del módulo de estado."""


class UnknownNeighborError(StateError, KeyError):
    """El vecino consultado no está en la tabla."""


@dataclass
class NodeBuffer:
    """Símbolos recuperados por un nodo (solo crece durante una corrida).

    ``mask`` puede ser una vista sobre la matriz de verdad del motor.
    """

    node: int
    mask: np.ndarray

    @classmethod
    def empty(cls, node: int, n: int) -> "NodeBuffer":
        return cls(node=node, mask=np.zeros(n, dtype=bool))

    @classmethod
    def from_symbols(cls, node: int, symbols: SymbolSet, n: int) -> "NodeBuffer":
        return cls(node=node, mask=symbol_mask(symbols, n).copy())

    @property
    def n(self) -> int:
        return int(self.mask.shape[0])

    @property
    def size(self) -> int:
        return int(np.count_nonzero(self.mask))

    @property
    def recovered(self) -> frozenset[SymbolId]:
        return mask_to_set(self.mask)

    @property
    def is_complete(self) -> bool:
        return bool(self.mask.all())

    def holds(self, symbol: SymbolId) -> bool:
        return bool(self.mask[symbol])

    def add(self, symbol: SymbolId) -> bool:
        """Agrega un símbolo; retorna True si era nuevo."""
        if self.mask[symbol]:
            return False
        self.mask[symbol] = True
        return True


@dataclass(frozen=True)
class NeighborTable:
    """Vista del nodo que codifica sobre los buffers de sus vecinos.

    Con feedback perfecto, cada fila es el conjunto decodificado real del
    vecino en el instante de la selección.
    """

    neighbors: tuple[int, ...]
    masks: np.ndarray

    def __post_init__(self) -> None:
        if self.masks.ndim != 2 or self.masks.shape[0] != len(self.neighbors):
            raise StateError("masks debe tener una fila por vecino")

    @classmethod
    def from_buffers(
        cls, buffers: Mapping[int, Union[NodeBuffer, np.ndarray]], n: int | None = None
    ) -> "NeighborTable":
        """Construye la tabla desde buffers o máscaras indexados por id de vecino."""
        ids = tuple(sorted(buffers))
        rows = [b.mask if isinstance(b, NodeBuffer) else b for b in (buffers[j] for j in ids)]
        if not rows:
            return cls.empty(n or 0)
        return cls(neighbors=ids, masks=np.array(rows, dtype=bool))

    @classmethod
    def from_symbol_sets(cls, sets: Mapping[int, SymbolSet], n: int) -> "NeighborTable":
        return cls.from_buffers({j: symbol_mask(s, n) for j, s in sets.items()}, n)

    @classmethod
    def empty(cls, n: int) -> "NeighborTable":
        return cls(neighbors=(), masks=np.zeros((0, n), dtype=bool))

    @property
    def n(self) -> int:
        return int(self.masks.shape[1])

    @property
    def sizes(self) -> np.ndarray:
        """|B_j| por vecino."""
        return self.masks.sum(axis=1)

    def __len__(self) -> int:
        return len(self.neighbors)

    def __contains__(self, j: object) -> bool:
        return j in self.neighbors

    def row(self, j: int) -> np.ndarray:
        try:
            return self.masks[self.neighbors.index(j)]
        except ValueError as exc:
            raise UnknownNeighborError(f"Vecino desconocido: {j}") from exc

    def ids(self, selector: np.ndarray) -> frozenset[int]:
        """Ids de los vecinos marcados en un vector booleano por fila."""
        return frozenset(self.neighbors[i] for i in np.flatnonzero(selector))


def missing_counts(table: NeighborTable, combined: SymbolSet) -> np.ndarray:
    """|C| - |B_j ∩ C| para cada vecino."""
    c = symbol_mask(combined, table.n)
    return np.count_nonzero(c & ~table.masks, axis=1)


def missing_for(table: NeighborTable, own: NodeBuffer, j: int) -> frozenset[SymbolId]:
    """B̄_j = B_x \\ (B_j ∩ B_x).

    Raises:
        UnknownNeighborError: si j no está en la tabla
    """
    return mask_to_set(own.mask & ~table.row(j))


def recoverers(table: NeighborTable, combined: SymbolSet) -> frozenset[int]:
    """R(C): vecinos a los que les falta exactamente un símbolo de C."""
    return table.ids(missing_counts(table, combined) == 1)


def holders(table: NeighborTable, combined: SymbolSet) -> frozenset[int]:
    """R*(C): vecinos que tienen todos los símbolos de C."""
    return table.ids(missing_counts(table, combined) == 0)


def extension_gains(table: NeighborTable, combined: np.ndarray) -> np.ndarray:
    """|R(C ∪ {s})| para cada símbolo s ∉ C (vector de longitud n).

    Un vecino queda en R(C ∪ {s}) si le faltaba uno de C y tiene s, o si no le
    faltaba ninguno y no tiene s. Las posiciones s ∈ C no tienen sentido y se
    ponen en -1.
    """
    combined = symbol_mask(combined, table.n)
    miss = missing_counts(table, combined)
    one = table.masks[miss == 1]
    zero = table.masks[miss == 0]
    gains = one.sum(axis=0) + (zero.shape[0] - zero.sum(axis=0))
    gains = gains.astype(np.int64)
    gains[combined] = -1
    return gains


def neighborhood_potential(adjacency: tuple[frozenset[int], ...], masks: np.ndarray) -> np.ndarray:
    """Potencial de información medio por nodo: media sobre vecinos de |B_j \\ B_x|.

    Returns:
        Vector float por nodo; NaN para nodos aislados
    """
    held = masks.astype(np.int32)
    # extra[j, x] = |B_j ∩ ~B_x|
    extra = held @ (1 - held).T
    out = np.full(masks.shape[0], np.nan)
    for x, neigh in enumerate(adjacency):
        if neigh:
            out[x] = extra[sorted(neigh), x].mean()
    return out
