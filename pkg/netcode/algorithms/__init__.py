"""Algoritmos de selección de paquetes y oráculos de prueba.

Uso:
    from netcode.algorithms import greedy_select, default_degree_table

    outcome = greedy_select(own, table, rng)
    outcome.combined  # conjunto C a combinar con XOR
"""

from __future__ import annotations

from netcode.algorithms.degree_table import (
    DegreeTable,
    decodable_probability,
    default_degree_table,
)
from netcode.algorithms.oracle import (
    MAX_ORACLE_SYMBOLS,
    OracleTooLargeError,
    ScriptedRng,
    ideal_packet_oracle,
    ideal_packet_probability,
    outcome_distribution,
)
from netcode.algorithms.selection import (
    SelectionError,
    SelectionInvariantError,
    SelectionOutcome,
    anc_select,
    apply_degree_cap,
    equalizing_select,
    feedback_selector,
    greedy_select,
    opportunistic_select,
    systematic_rlnc_select,
)

__all__ = [
    # Tipos
    "SelectionOutcome",
    "DegreeTable",
    "ScriptedRng",
    # Algoritmos
    "opportunistic_select",
    "greedy_select",
    "equalizing_select",
    "anc_select",
    "systematic_rlnc_select",
    "feedback_selector",
    "apply_degree_cap",
    # Tabla de grados
    "default_degree_table",
    "decodable_probability",
    # Oráculos
    "ideal_packet_oracle",
    "outcome_distribution",
    "ideal_packet_probability",
    "MAX_ORACLE_SYMBOLS",
    # Errores
    "SelectionError",
    "SelectionInvariantError",
    "OracleTooLargeError",
]
