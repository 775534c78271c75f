"""Métricas de diseminación: recuperación, grado medio, retardo de paquetes
y potencial de información, agregadas sobre nodos y corridas.

Uso:
    from netcode.metrics import recovery_curve, packet_delay

    curve = recovery_curve(logs)
    curve.mean, curve.ci_half_width
"""

from __future__ import annotations

from netcode.metrics.aggregate import (
    DEFAULT_Z,
    AggregateCurve,
    MetricsError,
    MixedConfigError,
    aggregate_samples,
    curve_distance,
    merge_curves,
)
from netcode.metrics.curves import (
    avg_degree_curve,
    check_homogeneous,
    delay_curve,
    potential_curve,
    recovery_curve,
)
from netcode.metrics.reports import (
    DelayReport,
    PotentialReport,
    RecoveryPointReport,
    full_recovery_point,
    information_potential,
    network_recovery_point,
    packet_delay,
)

__all__ = [
    # Tipos
    "AggregateCurve",
    "DelayReport",
    "PotentialReport",
    "RecoveryPointReport",
    # Curvas
    "recovery_curve",
    "avg_degree_curve",
    "delay_curve",
    "potential_curve",
    "merge_curves",
    "curve_distance",
    "aggregate_samples",
    "check_homogeneous",
    # Reportes
    "packet_delay",
    "information_potential",
    "full_recovery_point",
    "network_recovery_point",
    "DEFAULT_Z",
    # Errores
    "MetricsError",
    "MixedConfigError",
]
