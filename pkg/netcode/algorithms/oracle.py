"""Oráculos de prueba: búsqueda exhaustiva del paquete ideal y distribución
exacta de salidas de los algoritmos aleatorizados.

Solo para tests y experimentos chicos; nunca se usan dentro del motor.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Any, Optional, Sequence

import numpy as np

from netcode.algorithms.selection import (
    SelectionError,
    SelectionOutcome,
    Selector,
)
from netcode.codec.gf2 import SymbolId
from netcode.state.buffers import NeighborTable, NodeBuffer, missing_counts

MAX_ORACLE_SYMBOLS = 20


class OracleTooLargeError(ValueError):
    """El buffer es demasiado grande para enumerar 2^|B_x| subconjuntos."""


def ideal_packet_oracle(
    own: NodeBuffer, table: NeighborTable
) -> tuple[int, frozenset[frozenset[SymbolId]]]:
    """Máximo |R(C)| sobre todo C ⊆ B_x no vacío y los C que lo alcanzan.

    Returns:
        (max_recoverers, witnesses); (0, {}) si ningún C sirve a nadie

    Raises:
        OracleTooLargeError: si |B_x| > 20
    """
    ids = [int(s) for s in np.flatnonzero(own.mask)]
    if len(ids) > MAX_ORACLE_SYMBOLS:
        raise OracleTooLargeError(
            f"|B_x|={len(ids)} supera el máximo de {MAX_ORACLE_SYMBOLS} símbolos"
        )

    best = 0
    witnesses: set[frozenset[SymbolId]] = set()
    for size in range(1, len(ids) + 1):
        for subset in combinations(ids, size):
            value = int(np.count_nonzero(missing_counts(table, subset) == 1))
            if value > best:
                best, witnesses = value, {frozenset(subset)}
            elif value == best and best > 0:
                witnesses.add(frozenset(subset))
    return best, frozenset(witnesses)


class ScriptedRng:
    """Generador que reproduce una lista fija de elecciones ``integers(k)``.

    Agotado el guion, delega en ``fallback`` si existe; si no, falla.
    Registra la aridad de cada sorteo en ``arities``.
    """

    def __init__(self, choices: Sequence[int], fallback: Optional[np.random.Generator] = None):
        self.choices = list(choices)
        self.fallback = fallback
        self.arities: list[int] = []
        self._cursor = 0

    @property
    def consumed(self) -> int:
        return self._cursor

    def integers(self, *args: Any, **kwargs: Any) -> Any:
        if len(args) != 1 or kwargs:
            if self.fallback is None:
                raise SelectionError("ScriptedRng solo guiona llamadas integers(k)")
            return self.fallback.integers(*args, **kwargs)

        k = int(args[0])
        if self._cursor >= len(self.choices):
            if self.fallback is None:
                raise SelectionError("ScriptedRng sin elecciones restantes")
            value = int(self.fallback.integers(k))
        else:
            value = self.choices[self._cursor]
            if not 0 <= value < k:
                raise SelectionError(f"Elección {value} fuera de [0, {k})")
        self._cursor += 1
        self.arities.append(k)
        return value

    def permutation(self, x: Any) -> Any:
        if self.fallback is None:
            raise SelectionError("ScriptedRng no guiona permutaciones")
        return self.fallback.permutation(x)


class _BranchingRng(ScriptedRng):
    """Reproduce un prefijo y elige 0 en cada punto de ramificación nuevo."""

    def integers(self, *args: Any, **kwargs: Any) -> Any:
        if self._cursor >= len(self.choices) and len(args) == 1 and not kwargs:
            self.choices.append(0)
        return super().integers(*args, **kwargs)


def outcome_distribution(
    selector: Selector, own: NodeBuffer, table: NeighborTable
) -> dict[frozenset[SymbolId], Fraction]:
    """Distribución exacta de ``combined`` recorriendo todas las ramas aleatorias.

    Sirve para los algoritmos cuyos sorteos son elecciones uniformes
    ``integers(k)`` (Opportunistic, Greedy y Equalizing).
    """
    dist: dict[frozenset[SymbolId], Fraction] = {}
    prefix: list[int] = []
    while True:
        rng = _BranchingRng(prefix)
        outcome: SelectionOutcome = selector(own, table, rng)  # type: ignore[arg-type]
        path, arities = rng.choices[: rng.consumed], rng.arities

        weight = Fraction(1)
        for k in arities:
            weight /= k
        dist[outcome.combined] = dist.get(outcome.combined, Fraction(0)) + weight

        # siguiente rama: incrementar el último sorteo no agotado
        i = len(path) - 1
        while i >= 0 and path[i] == arities[i] - 1:
            i -= 1
        if i < 0:
            return dist
        prefix = path[:i] + [path[i] + 1]


def ideal_packet_probability(
    distribution: dict[frozenset[SymbolId], Fraction], own: NodeBuffer, table: NeighborTable
) -> Fraction:
    """Probabilidad de que la salida alcance el máximo |R(C)| del oráculo."""
    best, _ = ideal_packet_oracle(own, table)
    total = Fraction(0)
    for combined, p in distribution.items():
        value = int(np.count_nonzero(missing_counts(table, combined) == 1)) if combined else 0
        if value == best:
            total += p
    return total
