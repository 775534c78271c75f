"""Motor de simulación por rondas.

Modelo:
- MAC ideal (sin colisiones); cada transmisión llega a todos los vecinos actuales.
- Single-hop: solo transmite la fuente (nodo 0), una vez por ronda; cada
  receptor tiene un canal de borrado independiente.
- Multi-hop: cada nodo tiene una oportunidad por ronda, en orden secuencial
  o barajado; los enlaces no tienen pérdidas.
- Feedback perfecto: la tabla de vecinos se reconstruye desde el estado real
  antes de cada selección.

Streams aleatorios (SeedSequence(seed).spawn): topología, canal, scheduling y
un generador por nodo para la selección.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from netcode.algorithms.degree_table import DegreeTable, default_degree_table
from netcode.algorithms.selection import (
    SelectionOutcome,
    anc_select,
    apply_degree_cap,
    feedback_selector,
    receiver_rank,
    systematic_rlnc_select,
)
from netcode.codec.decoder import GJDecoderState, gj_insert, seed_decoder
from netcode.codec.gf2 import CodedPacket, SymbolId, simple_decode, xor_combine
from netcode.engine.runlog import NodeTrace, RunLog
from netcode.shared.config import AlgorithmKind, AncRank, DecoderKind, ScenarioConfig, ScenarioKind, Scheduling
from netcode.shared.logging_config import get_run_logger, log_run_summary
from netcode.state.buffers import NeighborTable, NodeBuffer, neighborhood_potential
from netcode.topology.builders import (
    Topology,
    build_clustered,
    build_grid,
    build_random_geometric,
    build_star,
)
from netcode.topology.mobility import build_mobile

SOURCE = 0


class DeliveryReport(NamedTuple):
    new_symbols: frozenset[SymbolId]
    immediate: bool


@dataclass
class NodeRuntime:
    """Estado de un nodo durante la corrida.

    ``buffer.mask`` es una vista sobre la fila del nodo en la matriz de verdad
    del motor, de modo que el feedback siempre ve el estado real.
    """

    buffer: NodeBuffer
    trace: NodeTrace
    gj: Optional[GJDecoderState] = None
    received_count: int = 0
    delay_count: int = 0
    initial_sent: bool = False
    rng: Optional[np.random.Generator] = field(default=None, repr=False)

    @property
    def is_complete(self) -> bool:
        return self.buffer.is_complete


def deliver(receiver: NodeRuntime, packet: CodedPacket, decoder_mode: DecoderKind) -> DeliveryReport:
    """Entrega un paquete a un receptor según el decodificador configurado.

    Simple: se agrega el único símbolo desconocido o se descarta el paquete.
    Full: se inserta en Gauss-Jordan y se agregan los símbolos recién
    decodificados. En ambos casos el paquete cuenta como recibido y suma
    retardo si no produjo ningún símbolo nuevo.
    """
    if decoder_mode is DecoderKind.FULL:
        if receiver.gj is None:
            receiver.gj = GJDecoderState(receiver.buffer.n)
            seed_decoder(receiver.gj, receiver.buffer.recovered)
        new = gj_insert(receiver.gj, packet).newly_decoded
    else:
        symbol = simple_decode(receiver.buffer.mask, packet)
        new = frozenset() if symbol is None else frozenset({symbol})

    for s in new:
        receiver.buffer.add(s)
    immediate = bool(new)

    receiver.received_count += 1
    if not immediate:
        receiver.delay_count += 1
    receiver.trace.record(receiver.buffer.size, packet.degree, immediate)
    if receiver.trace.completed_at is None and receiver.buffer.is_complete:
        receiver.trace.completed_at = receiver.received_count
    return DeliveryReport(new, immediate)


def initial_phase(config: ScenarioConfig) -> list[tuple[int, SymbolId]]:
    """Transmisiones sin codificar previas a la selección algorítmica.

    Single-hop: la fuente envía los n símbolos en orden. Multi-hop: cada nodo
    envía su propio símbolo en su primera oportunidad de transmisión.
    """
    if config.scenario is ScenarioKind.SINGLE_HOP:
        return [(SOURCE, s) for s in range(config.symbols)]
    return [(i, i) for i in range(config.n_nodes)]


def build_topology(config: ScenarioConfig, rng: np.random.Generator) -> Topology:
    """Topología del escenario configurado."""
    kind = config.scenario
    if kind is ScenarioKind.SINGLE_HOP:
        return build_star(config.n_nodes)
    if kind is ScenarioKind.GRID:
        assert config.grid_rows is not None and config.grid_cols is not None
        return build_grid(config.grid_rows, config.grid_cols)
    if kind is ScenarioKind.RANDOM:
        return build_random_geometric(
            config.n_nodes, config.target_degree, rng, config.arena_side, config.radius
        )
    if kind is ScenarioKind.CLUSTERED:
        return build_clustered(
            config.n_nodes,
            config.n_clusters,
            config.bridges_per_pair,
            rng,
            target_degree=config.target_degree,
            arena_side=config.arena_side,
        )
    return build_mobile(
        config.n_nodes,
        rng,
        target_degree=config.target_degree,
        arena_side=config.arena_side,
        radius=config.radius,
        speed_min=config.speed_min,
        speed_max=config.speed_max,
        dt=config.dt,
    )


def topology_for(config: ScenarioConfig) -> Topology:
    """Topología que usa ``run(config)`` (mismo stream aleatorio)."""
    topo_ss = np.random.SeedSequence(config.seed).spawn(4)[0]
    return build_topology(config, np.random.default_rng(topo_ss))


def _select(
    config: ScenarioConfig,
    own: NodeBuffer,
    table: NeighborTable,
    degrees: DegreeTable,
    rng: np.random.Generator,
) -> SelectionOutcome:
    kind = config.algorithm
    if kind is AlgorithmKind.ANC:
        rank = receiver_rank(table, config.anc_quantile) if config.anc_rank_source is AncRank.RECEIVERS else None
        outcome = anc_select(own, table, degrees, rng, rank=rank)
    elif kind is AlgorithmKind.SYSTEMATIC_RLNC:
        outcome = systematic_rlnc_select(own, False, table, rng)
    else:
        outcome = feedback_selector(kind, config.greedy_strict)(own, table, rng)
    return apply_degree_cap(outcome, config.degree_cap, table)


class _Simulation:
    """Estado mutable de una corrida; se usa una sola vez."""

    def __init__(self, config: ScenarioConfig) -> None:
        self.config = config
        n_symbols = config.symbols
        single_hop = config.scenario is ScenarioKind.SINGLE_HOP
        self.n_total = config.n_nodes + 1 if single_hop else config.n_nodes

        topo_ss, channel_ss, sched_ss, nodes_ss = np.random.SeedSequence(config.seed).spawn(4)
        self.channel_rng = np.random.default_rng(channel_ss)
        self.sched_rng = np.random.default_rng(sched_ss)
        node_rngs = [np.random.default_rng(s) for s in nodes_ss.spawn(self.n_total)]
        self.topology = build_topology(config, np.random.default_rng(topo_ss))

        self.truth = np.zeros((self.n_total, n_symbols), dtype=bool)
        if single_hop:
            self.truth[SOURCE] = True
            receivers = range(1, self.n_total)
        else:
            self.truth[np.arange(self.n_total), np.arange(self.n_total)] = True
            receivers = range(self.n_total)

        self.nodes = {
            i: NodeRuntime(
                buffer=NodeBuffer(node=i, mask=self.truth[i]),
                trace=NodeTrace(node=i, initial=int(self.truth[i].sum())),
                rng=node_rngs[i],
            )
            for i in range(self.n_total)
        }
        self.receivers = tuple(receivers)
        self.degrees = default_degree_table(n_symbols, config.degree_table)
        if config.decoder is DecoderKind.FULL:
            for i in self.receivers:
                node = self.nodes[i]
                node.gj = GJDecoderState(n_symbols)
                seed_decoder(node.gj, node.buffer.recovered)

        self.log = RunLog(config=config, traces={i: self.nodes[i].trace for i in self.receivers})

    def done(self) -> bool:
        return all(self.nodes[i].is_complete for i in self.receivers)

    def table_for(self, neighbors: frozenset[int]) -> NeighborTable:
        ids = tuple(sorted(neighbors))
        return NeighborTable(neighbors=ids, masks=self.truth[list(ids)].copy())

    def broadcast(self, sender: int, combined: frozenset[SymbolId], neighbors: frozenset[int]) -> None:
        packet = xor_combine(combined, self.config.symbols)
        ordered = sorted(neighbors)
        erased = np.zeros(len(ordered), dtype=bool)
        if self.config.erasure_p > 0:
            # un sorteo por vecino en cada transmisión, complete o no
            erased = self.channel_rng.random(len(ordered)) < self.config.erasure_p
        for j, lost in zip(ordered, erased):
            node = self.nodes[j]
            if lost or node.is_complete:
                continue
            deliver(node, packet, self.config.decoder)
        self.log.transmissions += 1

    def opportunity(self, sender: int, neighbors: frozenset[int], planned: Optional[SymbolId]) -> None:
        if planned is not None:
            self.broadcast(sender, frozenset({planned}), neighbors)
            return
        node = self.nodes[sender]
        assert node.rng is not None
        outcome = _select(self.config, node.buffer, self.table_for(neighbors), self.degrees, node.rng)
        if outcome.is_empty:
            self.log.skipped += 1
            return
        self.broadcast(sender, outcome.combined, neighbors)

    def sample_potential(self, t: int) -> None:
        raw = neighborhood_potential(self.topology.adjacency(t), self.truth)
        defined = raw[~np.isnan(raw)]
        self.log.potential_raw.append([float(v) for v in raw])
        self.log.potential_mean.append(float(defined.mean()) if defined.size else float("nan"))

    def run_single_hop(self) -> None:
        plan = initial_phase(self.config)
        neighbors = self.topology.adjacency(0)[SOURCE]
        for t in range(self.config.max_rounds):
            if self.done():
                break
            planned = plan[t][1] if t < len(plan) else None
            self.opportunity(SOURCE, neighbors, planned)
            self.log.rounds = t + 1
            self.sample_potential(t)

    def run_multi_hop(self) -> None:
        for t in range(self.config.max_rounds):
            if self.done():
                break
            adjacency = self.topology.adjacency(t)
            if self.config.scheduling is Scheduling.RANDOM:
                order = [int(i) for i in self.sched_rng.permutation(self.n_total)]
            else:
                order = list(range(self.n_total))
            for x in order:
                neighbors = adjacency[x]
                if not neighbors:
                    continue
                node = self.nodes[x]
                planned = None
                if not node.initial_sent:
                    planned, node.initial_sent = x, True
                self.opportunity(x, neighbors, planned)
            self.log.rounds = t + 1
            self.sample_potential(t)

    def run(self) -> RunLog:
        if self.config.scenario is ScenarioKind.SINGLE_HOP:
            self.run_single_hop()
        else:
            self.run_multi_hop()
        self.log.complete = self.done()
        if self.log.complete:
            self.log.completion_round = self.log.rounds
        return self.log


def run(config: ScenarioConfig) -> RunLog:
    """Ejecuta una corrida completa.

    Args:
        config: Escenario validado

    Returns:
        RunLog; ``complete`` es False si se alcanzó max_rounds sin que todos
        los nodos recuperaran los n símbolos
    """
    logger = get_run_logger(
        __name__,
        scenario=config.scenario.value,
        algorithm=config.algorithm.value,
        decoder=config.decoder.value,
        seed=config.seed,
    )
    logger.debug("run_started", n_nodes=config.n_nodes, n_symbols=config.symbols)
    log = _Simulation(config).run()
    log_run_summary(logger, log)
    return log
