"""Decodificador completo Gauss-Jordan incremental sobre GF(2).

La matriz se mantiene en forma escalonada reducida (RREF): cada columna
pivote tiene exactamente un bit activo entre todas las filas. Así, reducir un
paquete nuevo es un único XOR de las filas cuyo pivote aparece en él.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from netcode.codec.gf2 import (
    CodedPacket,
    CoefVector,
    DimensionMismatchError,
    SymbolId,
)


class InsertReport(NamedTuple):
    """Resultado de gj_insert."""

    innovative: bool
    newly_decoded: frozenset[SymbolId]


@dataclass
class GJDecoderState:
    """Estado del decodificador: filas RREF ordenadas por columna pivote.

    Es de un único dueño (un nodo); no se comparte entre hilos.
    """

    n: int
    rows: np.ndarray = field(init=False, repr=False)
    pivots: np.ndarray = field(init=False)
    payloads: Optional[np.ndarray] = field(default=None, init=False, repr=False)
    decoded: set[SymbolId] = field(default_factory=set, init=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DimensionMismatchError("La dimensión del decodificador debe ser >= 1")
        self.rows = np.zeros((0, self.n), dtype=bool)
        self.pivots = np.zeros(0, dtype=np.int64)

    @property
    def rank(self) -> int:
        return int(self.pivots.shape[0])

    def is_rref(self) -> bool:
        """Cada columna pivote tiene un único bit activo y los pivotes son crecientes."""
        if self.rank == 0:
            return True
        if np.any(np.diff(self.pivots) <= 0):
            return False
        column_weights = self.rows[:, self.pivots].sum(axis=0)
        leading = np.argmax(self.rows, axis=1)
        return bool(np.all(column_weights == 1) and np.array_equal(leading, self.pivots))

    def payload_of(self, symbol: SymbolId) -> Optional[bytes]:
        """Payload recuperado de un símbolo decodificado (si se transportan payloads)."""
        if self.payloads is None or symbol not in self.decoded:
            return None
        row = int(np.searchsorted(self.pivots, symbol))
        return self.payloads[row].tobytes()


def gj_insert(state: GJDecoderState, packet: CodedPacket) -> InsertReport:
    """Inserta un paquete en el decodificador y restaura la RREF.

    Args:
        state: Estado del decodificador (se modifica)
        packet: Paquete recibido

    Returns:
        InsertReport(innovative, newly_decoded)

    Raises:
        DimensionMismatchError: si la longitud no coincide con state.n
    """
    if packet.coef.n != state.n:
        raise DimensionMismatchError(
            f"Paquete de longitud {packet.coef.n} para decodificador de dimensión {state.n}"
        )

    residue = packet.coef.bits.copy()
    carries_payload = packet.payload is not None
    payload = np.frombuffer(packet.payload, dtype=np.uint8).copy() if carries_payload else None
    if carries_payload and state.payloads is None:
        if state.rank:
            raise DimensionMismatchError("El decodificador ya contiene filas sin payload")
        state.payloads = np.zeros((0, payload.shape[0]), dtype=np.uint8)
    elif not carries_payload and state.payloads is not None:
        raise DimensionMismatchError("El decodificador transporta payloads y el paquete no")

    if state.rank:
        hits = residue[state.pivots]
        if hits.any():
            residue ^= np.bitwise_xor.reduce(state.rows[hits], axis=0)
            if payload is not None and state.payloads is not None:
                payload ^= np.bitwise_xor.reduce(state.payloads[hits], axis=0)

    if not residue.any():
        return InsertReport(False, frozenset())

    pivot = int(np.argmax(residue))

    # back-substitution: limpiar la nueva columna pivote de las filas existentes
    clash = state.rows[:, pivot].copy()
    if clash.any():
        state.rows[clash] ^= residue
        if payload is not None and state.payloads is not None:
            state.payloads[clash] ^= payload

    at = int(np.searchsorted(state.pivots, pivot))
    state.rows = np.insert(state.rows, at, residue, axis=0)
    state.pivots = np.insert(state.pivots, at, pivot)
    if payload is not None and state.payloads is not None:
        state.payloads = np.insert(state.payloads, at, payload, axis=0)

    # solo pueden volverse unitarias la fila nueva y las que cambiaron
    touched = np.insert(clash, at, True)
    weights = state.rows[touched].sum(axis=1)
    candidates = state.pivots[touched][weights == 1]
    newly = frozenset(int(s) for s in candidates) - state.decoded
    state.decoded.update(newly)
    return InsertReport(True, newly)


def decoded_set(state: GJDecoderState) -> frozenset[SymbolId]:
    """Símbolos cuya fila es un vector unitario."""
    return frozenset(state.decoded)


def seed_decoder(state: GJDecoderState, symbols: frozenset[SymbolId] | set[SymbolId]) -> None:
    """Inserta vectores unitarios para los símbolos que el nodo ya posee."""
    for s in sorted(symbols):
        gj_insert(state, CodedPacket(CoefVector.unit(s, state.n)))
