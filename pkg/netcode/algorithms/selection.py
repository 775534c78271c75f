"""Algoritmos de selección de paquetes.

Cada algoritmo recibe el buffer propio (B_x), la tabla de vecinos (B_j) y un
generador aleatorio, y devuelve el conjunto C de símbolos a combinar.

Orden de sorteos (reproducibilidad):
- Toda elección uniforme entre candidatos ordena los ids de forma ascendente
  y hace exactamente una llamada ``rng.integers(k)``; si k == 1 no se sortea.
- ANC hace una llamada ``rng.permutation`` sobre los ids recuperados.
- Systematic RLNC (fase codificada) hace llamadas ``rng.integers(0, 2, size=r)``
  hasta obtener un vector no nulo.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Protocol

import numpy as np

from netcode.algorithms.degree_table import DegreeTable
from netcode.codec.gf2 import SymbolId, mask_to_set
from netcode.shared.config import AlgorithmKind
from netcode.shared.logging_config import get_logger
from netcode.state.buffers import (
    NeighborTable,
    NodeBuffer,
    extension_gains,
    missing_counts,
    recoverers,
)

logger = get_logger(__name__)


class SelectionError(RuntimeError):
    """Error base de los algoritmos de selección."""


class SelectionInvariantError(SelectionError):
    """Un invariante del algoritmo se violó durante la construcción de C."""


class Rng(Protocol):
    """Subconjunto de numpy.random.Generator que usan los algoritmos."""

    def integers(self, *args: Any, **kwargs: Any) -> Any: ...

    def permutation(self, x: Any) -> Any: ...


@dataclass(frozen=True)
class SelectionOutcome:
    """Conjunto C elegido y R(C) al momento de la salida.

    ``order`` guarda los símbolos en el orden en que se agregaron y ``served``
    los vecinos J elegidos por Equalizing.
    """

    combined: frozenset[SymbolId]
    immediate_recoverers: frozenset[int]
    order: tuple[SymbolId, ...] = ()
    served: tuple[int, ...] = field(default=())

    @property
    def degree(self) -> int:
        return len(self.combined)

    @property
    def is_empty(self) -> bool:
        return not self.combined

    @classmethod
    def empty(cls) -> "SelectionOutcome":
        return cls(frozenset(), frozenset())

    def truncated(self, cap: int, table: Optional[NeighborTable]) -> "SelectionOutcome":
        """Conserva los primeros ``cap`` símbolos agregados (variante de grado limitado)."""
        if self.degree <= cap:
            return self
        order = self.order[:cap]
        kept = frozenset(order)
        return SelectionOutcome(
            combined=kept,
            immediate_recoverers=recoverers(table, kept) if table is not None and len(table) else frozenset(),
            order=order,
            served=self.served,
        )


def _pick(rng: Rng, candidates: np.ndarray) -> int:
    """Elección uniforme entre candidatos (ids ascendentes)."""
    if candidates.shape[0] == 1:
        return int(candidates[0])
    return int(candidates[int(rng.integers(candidates.shape[0]))])


def _argmax_pick(rng: Rng, scores: np.ndarray, eligible: np.ndarray) -> tuple[int, int]:
    """Símbolo elegible de score máximo con desempate uniforme; retorna (símbolo, score)."""
    ids = np.flatnonzero(eligible)
    values = scores[ids]
    best = int(values.max())
    return _pick(rng, ids[values == best]), best


def _outcome(table: NeighborTable, c: np.ndarray, order: list[int], served: tuple[int, ...] = ()) -> SelectionOutcome:
    combined = mask_to_set(c)
    return SelectionOutcome(
        combined=combined,
        immediate_recoverers=recoverers(table, c) if len(table) and combined else frozenset(),
        order=tuple(order),
        served=served,
    )


def opportunistic_select(own: NodeBuffer, table: NeighborTable, rng: Rng) -> SelectionOutcome:
    """Algoritmo Opportunistic.

    S arranca con los símbolos de B_x que le faltan a algún vecino; en cada
    iteración se sortea s* ∈ S, se agrega a C y S pasa a ser la intersección de
    los buffers de R(C) (restringida a B_x), menos C. R(C) solo gana miembros.
    """
    own_mask = own.mask
    c = np.zeros(own.n, dtype=bool)
    order: list[int] = []
    if not len(table):
        return SelectionOutcome.empty()

    s = own_mask & ~np.logical_and.reduce(table.masks, axis=0)
    previous = np.zeros(len(table), dtype=bool)
    while s.any():
        chosen = _pick(rng, np.flatnonzero(s))
        c[chosen] = True
        order.append(chosen)

        current = missing_counts(table, c) == 1
        if np.any(previous & ~current):
            logger.error("selection_invariant_violated", algorithm="opportunistic", order=order)
            raise SelectionInvariantError("Opportunistic: un vecino salió de R(C)")
        previous = current
        if not current.any():
            break
        s = own_mask & ~c & np.logical_and.reduce(table.masks[current], axis=0)

    return _outcome(table, c, order)


def greedy_select(
    own: NodeBuffer, table: NeighborTable, rng: Rng, strict: bool = True
) -> SelectionOutcome:
    """Algoritmo Greedy.

    El primer símbolo maximiza |R({s})| (el más raro del vecindario). Luego se
    elige s* = argmax |R(C ∪ {s})| y se acepta solo si |R(C ∪ {s*})| > |R(C)|.

    ``strict=False`` acepta también empates, pero solo entre símbolos que le
    faltan a algún vecino de R*(C); un símbolo que todos tienen no se agrega.
    """
    if not len(table):
        return SelectionOutcome.empty()

    own_mask = own.mask
    c = np.zeros(own.n, dtype=bool)
    order: list[int] = []

    rarity = np.count_nonzero(~table.masks, axis=0)
    if not own_mask.any() or int(rarity[own_mask].max()) == 0:
        return SelectionOutcome.empty()
    candidate, value = _argmax_pick(rng, rarity, own_mask)

    q = 0
    while value > q or (value == q and not strict):
        q = value
        c[candidate] = True
        order.append(candidate)
        remaining = own_mask & ~c
        if not strict:
            full = table.masks[missing_counts(table, c) == 0]
            remaining &= np.logical_or.reduce(~full, axis=0) if full.shape[0] else False
        if not remaining.any():
            break
        candidate, value = _argmax_pick(rng, extension_gains(table, c), remaining)

    return _outcome(table, c, order)


def equalizing_select(own: NodeBuffer, table: NeighborTable, rng: Rng) -> SelectionOutcome:
    """Algoritmo Equalizing.

    Atiende primero al vecino más pobre (mínimo |B_j|) entre los que tienen
    todo C; el símbolo agregado le falta a ese vecino y lo tienen todos los
    vecinos atendidos antes (B es la intersección de sus buffers).
    """
    if not len(table):
        return SelectionOutcome.empty()

    b = own.mask.copy()
    c = np.zeros(own.n, dtype=bool)
    order: list[int] = []
    served: list[int] = []
    sizes = table.sizes

    while b.any():
        eligible = np.flatnonzero(missing_counts(table, c) == 0)
        if eligible.size == 0:
            break
        poorest = sizes[eligible].min()
        row = _pick(rng, eligible[sizes[eligible] == poorest])

        candidates = b & ~table.masks[row]
        if not candidates.any():
            break
        chosen, _ = _argmax_pick(rng, extension_gains(table, c), candidates)
        c[chosen] = True
        order.append(chosen)
        served.append(table.neighbors[row])
        b &= table.masks[row]

    return _outcome(table, c, order, tuple(served))


def receiver_rank(table: Optional[NeighborTable], quantile: float) -> Optional[int]:
    """Cuantil inferior de |B_j| entre los vecinos incompletos.

    Retorna None sin vecinos y n si todos están completos.
    """
    if table is None or not len(table):
        return None
    sizes = table.sizes
    pending = sizes[sizes < table.n]
    if pending.size == 0:
        return table.n
    return int(np.quantile(pending, quantile, method="lower"))


def anc_select(
    own: NodeBuffer,
    table: Optional[NeighborTable],
    degrees: DegreeTable,
    rng: Rng,
    rank: Optional[int] = None,
) -> SelectionOutcome:
    """Adaptive Network Coding: subconjunto aleatorio de tamaño min(D(r), |B_x|).

    ``rank`` es la estimación r del estado de los receptores; sin ella se usa
    |B_x|. No usa feedback para elegir C; R(C) se calcula después solo para
    métricas.
    """
    held = own.size
    if held == 0:
        return SelectionOutcome.empty()
    r = held if rank is None else rank
    d = min(degrees(r), held)
    ids = np.flatnonzero(own.mask)
    order = [int(s) for s in rng.permutation(ids)[:d]]
    combined = frozenset(order)
    return SelectionOutcome(
        combined=combined,
        immediate_recoverers=recoverers(table, combined) if table is not None and len(table) else frozenset(),
        order=tuple(order),
    )


def systematic_rlnc_select(
    own: NodeBuffer,
    systematic: bool,
    table: Optional[NeighborTable],
    rng: Rng,
    step: int = 0,
) -> SelectionOutcome:
    """Systematic Random Network Coding.

    Fase sistemática: el símbolo recuperado número ``step`` (orden ascendente)
    como paquete de grado 1. Fase codificada: combinación GF(2) uniforme no nula
    de todos los símbolos recuperados.
    """
    ids = np.flatnonzero(own.mask)
    if ids.size == 0:
        return SelectionOutcome.empty()
    if systematic:
        if step >= ids.size:
            return SelectionOutcome.empty()
        chosen = [int(ids[step])]
    else:
        bits = np.zeros(ids.size, dtype=bool)
        while not bits.any():
            bits = rng.integers(0, 2, size=ids.size).astype(bool)
        chosen = [int(s) for s in ids[bits]]
    combined = frozenset(chosen)
    return SelectionOutcome(
        combined=combined,
        immediate_recoverers=recoverers(table, combined) if table is not None and len(table) else frozenset(),
        order=tuple(chosen),
    )


Selector = Callable[[NodeBuffer, NeighborTable, Rng], SelectionOutcome]


def feedback_selector(kind: AlgorithmKind, greedy_strict: bool = True) -> Selector:
    """Selector con firma (own, table, rng) para los algoritmos con feedback."""
    if kind is AlgorithmKind.OPPORTUNISTIC:
        return opportunistic_select
    if kind is AlgorithmKind.EQUALIZING:
        return equalizing_select
    if kind is AlgorithmKind.GREEDY:
        if greedy_strict:
            return greedy_select
        return lambda own, table, rng: greedy_select(own, table, rng, strict=False)
    raise SelectionError(f"{kind.value} no es un algoritmo basado en feedback")


def apply_degree_cap(
    outcome: SelectionOutcome, cap: Optional[int], table: Optional[NeighborTable]
) -> SelectionOutcome:
    """Limita el grado conservando los primeros símbolos elegidos; R(C) se recalcula."""
    if cap is None:
        return outcome
    return outcome.truncated(cap, table)
