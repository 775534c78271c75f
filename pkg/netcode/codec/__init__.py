"""Codec GF(2): paquetes codificados, decodificador simple y Gauss-Jordan.

Uso:
    from netcode.codec import xor_combine, simple_decode, GJDecoderState, gj_insert
"""

from __future__ import annotations

from netcode.codec.decoder import (
    GJDecoderState,
    InsertReport,
    decoded_set,
    gj_insert,
    seed_decoder,
)
from netcode.codec.gf2 import (
    CodecError,
    CodedPacket,
    CoefVector,
    DimensionMismatchError,
    EmptyCombinationError,
    SymbolId,
    degree,
    mask_to_set,
    simple_decode,
    symbol_mask,
    xor_combine,
    xor_payloads,
)

__all__ = [
    # Tipos
    "SymbolId",
    "CoefVector",
    "CodedPacket",
    "GJDecoderState",
    "InsertReport",
    # Operaciones
    "xor_combine",
    "xor_payloads",
    "degree",
    "simple_decode",
    "gj_insert",
    "decoded_set",
    "seed_decoder",
    "symbol_mask",
    "mask_to_set",
    # Errores
    "CodecError",
    "EmptyCombinationError",
    "DimensionMismatchError",
]
