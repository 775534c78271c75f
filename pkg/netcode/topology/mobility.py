"""Modelo de movilidad random waypoint sin pausa.

Orden de sorteos por paso: los nodos que llegan a su waypoint (ids
ascendentes) sortean primero todos los waypoints nuevos y luego todas las
velocidades nuevas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from netcode.topology.builders import (
    Adjacency,
    Topology,
    TopologyError,
    TopologyMode,
    adjacency_from_positions,
    radius_for_degree,
)

# Densidad estacionaria del random waypoint en un cuadrado unitario:
# f(x, y) = 36 x(1-x) y(1-y), cuya integral de f^2 es 1.44.
RWP_DENSITY_FACTOR = 1.44


@dataclass
class MobilityState:
    """Posición (m), waypoint (m) y velocidad del tramo (m/s) por nodo."""

    positions: np.ndarray
    waypoints: np.ndarray
    speeds: np.ndarray
    arena_side: float = 100.0
    speed_min: float = 2.0
    speed_max: float = 4.0

    @property
    def n_nodes(self) -> int:
        return int(self.positions.shape[0])

    @classmethod
    def random(
        cls,
        n: int,
        rng: np.random.Generator,
        arena_side: float = 100.0,
        speed_min: float = 2.0,
        speed_max: float = 4.0,
    ) -> "MobilityState":
        if speed_min <= 0 or speed_min > speed_max:
            raise TopologyError(f"Rango de velocidades inválido [{speed_min}, {speed_max}]")
        return cls(
            positions=rng.uniform(0.0, arena_side, size=(n, 2)),
            waypoints=rng.uniform(0.0, arena_side, size=(n, 2)),
            speeds=rng.uniform(speed_min, speed_max, size=n),
            arena_side=arena_side,
            speed_min=speed_min,
            speed_max=speed_max,
        )


def step_mobility(
    state: MobilityState, dt: float, radius: float, rng: np.random.Generator
) -> Adjacency:
    """Avanza cada nodo hacia su waypoint ``speed * dt`` metros y recalcula la adyacencia.

    Un nodo que alcanzaría (o pasaría) su waypoint queda exactamente en él y
    sortea un waypoint y una velocidad nuevos; el tiempo sobrante se pierde.
    """
    if dt <= 0:
        raise TopologyError("dt debe ser > 0")

    delta = state.waypoints - state.positions
    dist = np.linalg.norm(delta, axis=1)
    travel = state.speeds * dt
    arrived = dist <= travel

    moving = ~arrived
    state.positions[moving] += delta[moving] * (travel[moving] / dist[moving])[:, None]
    state.positions[arrived] = state.waypoints[arrived]

    k = int(np.count_nonzero(arrived))
    if k:
        state.waypoints[arrived] = rng.uniform(0.0, state.arena_side, size=(k, 2))
        state.speeds[arrived] = rng.uniform(state.speed_min, state.speed_max, size=k)

    np.clip(state.positions, 0.0, state.arena_side, out=state.positions)
    return adjacency_from_positions(state.positions, radius)


@dataclass
class MobileTopology(Topology):
    """Topología dinámica: la ronda t corresponde a t pasos de movilidad.

    Avanza de forma perezosa y solo hacia adelante.
    """

    state: Optional[MobilityState] = field(default=None, repr=False)
    radius: float = 0.0
    dt: float = 1.0
    rng: Optional[np.random.Generator] = field(default=None, repr=False)
    current_round: int = 0

    @property
    def mode(self) -> TopologyMode:
        return TopologyMode.DYNAMIC

    def _advance(self, t: int) -> None:
        if t < self.current_round:
            raise TopologyError(f"La ronda {t} ya pasó (actual {self.current_round})")
        assert self.state is not None and self.rng is not None
        while self.current_round < t:
            self.snapshot = step_mobility(self.state, self.dt, self.radius, self.rng)
            self.current_round += 1
        self.coords = self.state.positions

    def adjacency(self, t: int = 0) -> Adjacency:
        self._advance(t)
        return self.snapshot

    def positions(self, t: int = 0) -> Optional[np.ndarray]:
        self._advance(t)
        return self.coords.copy() if self.coords is not None else None


def build_mobile(
    n: int,
    rng: np.random.Generator,
    target_degree: float = 8.0,
    arena_side: float = 100.0,
    radius: Optional[float] = None,
    speed_min: float = 2.0,
    speed_max: float = 4.0,
    dt: float = 1.0,
) -> MobileTopology:
    """Topología móvil; la ronda 0 es la configuración inicial (sin conectividad forzada).

    El radio por defecto apunta a target_degree vecinos en el régimen
    estacionario, donde los nodos se concentran hacia el centro.
    """
    if n < 2:
        raise TopologyError("Se requieren al menos 2 nodos")
    r = radius if radius is not None else radius_for_degree(n, target_degree / RWP_DENSITY_FACTOR, arena_side)
    state = MobilityState.random(n, rng, arena_side, speed_min, speed_max)
    return MobileTopology(
        n_nodes=n,
        snapshot=adjacency_from_positions(state.positions, r),
        coords=state.positions,
        state=state,
        radius=r,
        dt=dt,
        rng=rng,
    )
