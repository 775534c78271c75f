"""Motor de simulación por rondas y traza de corridas.

Uso:
    from netcode.engine import run
    from netcode.shared.config import ScenarioConfig

    log = run(ScenarioConfig(scenario="grid", algorithm="greedy", seed=3))
    log.complete, log.rounds
"""

from __future__ import annotations

from netcode.engine.runlog import NodeTrace, RunLog
from netcode.engine.simulator import (
    DeliveryReport,
    NodeRuntime,
    build_topology,
    deliver,
    initial_phase,
    run,
    topology_for,
)

__all__ = [
    "NodeTrace",
    "RunLog",
    "NodeRuntime",
    "DeliveryReport",
    "run",
    "deliver",
    "initial_phase",
    "build_topology",
    "topology_for",
]
