"""Paquetes codificados sobre GF(2).

Un paquete se identifica por su vector de coeficientes binario sobre los n
símbolos originales del universo de la corrida. Combinar paquetes equivale al
XOR bit a bit de sus coeficientes (y de sus payloads, si los hay).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, TypeAlias, Union

import numpy as np

SymbolId: TypeAlias = int

# Un conjunto de símbolos puede venir como máscara booleana o como iterable de ids
SymbolSet: TypeAlias = Union[np.ndarray, Iterable[int]]


class CodecError(ValueError):
    """Error base del codec."""


class EmptyCombinationError(CodecError):
    """Un paquete de grado 0 nunca se transmite."""


class DimensionMismatchError(CodecError):
    """Longitud de coeficientes distinta a la dimensión esperada."""


def symbol_mask(symbols: SymbolSet, n: int) -> np.ndarray:
    """Convierte un conjunto de símbolos en una máscara booleana de longitud n.

    Args:
        symbols: Máscara booleana o iterable de SymbolId
        n: Tamaño del universo

    Returns:
        Máscara booleana (copia nueva si se construyó desde ids)
    """
    if isinstance(symbols, np.ndarray) and symbols.dtype == np.bool_:
        if symbols.shape != (n,):
            raise DimensionMismatchError(f"Máscara de longitud {symbols.shape} para n={n}")
        return symbols
    mask = np.zeros(n, dtype=bool)
    ids = np.fromiter((int(s) for s in symbols), dtype=np.int64)
    if ids.size:
        if ids.min() < 0 or ids.max() >= n:
            raise CodecError(f"Símbolo fuera de rango [0, {n})")
        mask[ids] = True
    return mask


def mask_to_set(mask: np.ndarray) -> frozenset[SymbolId]:
    """Máscara booleana -> frozenset de ids."""
    return frozenset(int(i) for i in np.flatnonzero(mask))


@dataclass(frozen=True, slots=True, eq=False)
class CoefVector:
    """Vector de coeficientes GF(2) de longitud fija n."""

    bits: np.ndarray

    def __post_init__(self) -> None:
        bits = np.asarray(self.bits, dtype=bool)
        if bits.ndim != 1:
            raise CodecError("CoefVector debe ser unidimensional")
        bits = bits.copy()
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @classmethod
    def zeros(cls, n: int) -> "CoefVector":
        return cls(np.zeros(n, dtype=bool))

    @classmethod
    def unit(cls, symbol: SymbolId, n: int) -> "CoefVector":
        return cls.from_symbols([symbol], n)

    @classmethod
    def from_symbols(cls, symbols: SymbolSet, n: int) -> "CoefVector":
        return cls(symbol_mask(symbols, n))

    @classmethod
    def from_string(cls, text: str) -> "CoefVector":
        """'1100' -> bits s1, s2 activos (n=4)."""
        if set(text) - {"0", "1"}:
            raise CodecError(f"Cadena de coeficientes inválida: {text!r}")
        return cls(np.array([c == "1" for c in text], dtype=bool))

    @property
    def n(self) -> int:
        return int(self.bits.shape[0])

    @property
    def degree(self) -> int:
        return int(np.count_nonzero(self.bits))

    def is_zero(self) -> bool:
        return not self.bits.any()

    def support(self) -> frozenset[SymbolId]:
        return mask_to_set(self.bits)

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def __xor__(self, other: "CoefVector") -> "CoefVector":
        if other.n != self.n:
            raise DimensionMismatchError(f"XOR entre longitudes {self.n} y {other.n}")
        return CoefVector(self.bits ^ other.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoefVector):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash((self.n, self.bits.tobytes()))

    def __repr__(self) -> str:
        return f"CoefVector({self.to_string()!r})"


@dataclass(frozen=True, slots=True)
class CodedPacket:
    """Paquete codificado: coeficientes y payload opcional (solo self-tests)."""

    coef: CoefVector
    payload: Optional[bytes] = field(default=None)

    @property
    def degree(self) -> int:
        return self.coef.degree

    def support(self) -> frozenset[SymbolId]:
        return self.coef.support()


def xor_payloads(chunks: Iterable[bytes]) -> bytes:
    """XOR byte a byte de payloads de igual longitud."""
    acc: Optional[np.ndarray] = None
    for chunk in chunks:
        arr = np.frombuffer(chunk, dtype=np.uint8)
        if acc is None:
            acc = arr.copy()
        elif arr.shape != acc.shape:
            raise CodecError("Payloads de distinta longitud")
        else:
            acc ^= arr
    return b"" if acc is None else acc.tobytes()


def xor_combine(
    symbol_ids: SymbolSet,
    n: int,
    payloads: Optional[Sequence[bytes]] = None,
) -> CodedPacket:
    """Construye el paquete p = XOR de los símbolos indicados.

    Args:
        symbol_ids: Símbolos a combinar (no vacío)
        n: Tamaño del universo de símbolos
        payloads: Payloads de los n símbolos originales (opcional)

    Returns:
        CodedPacket con grado |symbol_ids|

    Raises:
        EmptyCombinationError: si no hay símbolos
    """
    coef = CoefVector.from_symbols(symbol_ids, n)
    if coef.is_zero():
        raise EmptyCombinationError("Un paquete de grado 0 nunca se transmite")
    payload = None
    if payloads is not None:
        if len(payloads) != n:
            raise DimensionMismatchError(f"Se esperaban {n} payloads, llegaron {len(payloads)}")
        payload = xor_payloads(payloads[i] for i in np.flatnonzero(coef.bits))
    return CodedPacket(coef=coef, payload=payload)


def degree(packet: CodedPacket) -> int:
    """Grado del paquete (popcount de los coeficientes)."""
    return packet.coef.degree


def simple_decode(recovered: SymbolSet, packet: CodedPacket) -> Optional[SymbolId]:
    """Decodificador simple: usa solo símbolos ya recuperados.

    Args:
        recovered: Símbolos recuperados por el receptor
        packet: Paquete recibido

    Returns:
        El único símbolo desconocido del paquete, o None si hay 0 o más de 1
        (el paquete se descarta)
    """
    known = symbol_mask(recovered, packet.coef.n)
    unknown = packet.coef.bits & ~known
    if np.count_nonzero(unknown) != 1:
        return None
    return int(np.flatnonzero(unknown)[0])
