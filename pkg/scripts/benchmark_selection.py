"""Benchmark simple del costo de selección por algoritmo y de una corrida completa."""

from __future__ import annotations

import argparse
import time

import numpy as np
from rich.console import Console
from rich.table import Table

from netcode.algorithms.degree_table import default_degree_table
from netcode.algorithms.selection import anc_select, feedback_selector, systematic_rlnc_select
from netcode.engine.simulator import run
from netcode.shared.config import AlgorithmKind, ScenarioConfig
from netcode.state.buffers import NeighborTable, NodeBuffer

console = Console()


def random_state(
    rng: np.random.Generator, n: int, neighbors: int, fill: float
) -> tuple[NodeBuffer, NeighborTable]:
    own = NodeBuffer(node=0, mask=rng.random(n) < fill)
    masks = rng.random((neighbors, n)) < fill
    return own, NeighborTable(neighbors=tuple(range(1, neighbors + 1)), masks=masks)


def bench_selection(iterations: int, n: int, neighbors: int, fill: float, seed: int) -> dict[str, float]:
    """Microsegundos promedio por selección."""
    rng = np.random.default_rng(seed)
    states = [random_state(rng, n, neighbors, fill) for _ in range(iterations)]
    degrees = default_degree_table(n)

    selectors = {
        kind.value: feedback_selector(kind)
        for kind in (AlgorithmKind.OPPORTUNISTIC, AlgorithmKind.GREEDY, AlgorithmKind.EQUALIZING)
    }
    selectors["anc"] = lambda own, table, r: anc_select(own, table, degrees, r)
    selectors["systematic_rlnc"] = lambda own, table, r: systematic_rlnc_select(own, False, table, r)

    timings: dict[str, float] = {}
    for name, select in selectors.items():
        start = time.perf_counter()
        for own, table in states:
            select(own, table, rng)
        timings[name] = (time.perf_counter() - start) / iterations * 1e6
    return timings


def bench_run(n: int, seed: int) -> float:
    """Segundos de una corrida single-hop con Greedy."""
    config = ScenarioConfig(scenario="single_hop", n_nodes=n, n_symbols=n, erasure_p=0.5, seed=seed)
    start = time.perf_counter()
    run(config)
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--iterations", type=int, default=1000)
    parser.add_argument("--symbols", type=int, default=100)
    parser.add_argument("--neighbors", type=int, default=8)
    parser.add_argument("--fill", type=float, default=0.5, help="Fracción de símbolos en cada buffer")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    timings = bench_selection(args.iterations, args.symbols, args.neighbors, args.fill, args.seed)
    table = Table(title=f"Selección ({args.symbols} símbolos, {args.neighbors} vecinos)")
    table.add_column("algoritmo")
    table.add_column("µs / selección", justify="right")
    for name, micros in sorted(timings.items(), key=lambda kv: kv[1]):
        table.add_row(name, f"{micros:.1f}")
    console.print(table)

    elapsed = bench_run(args.symbols, args.seed)
    console.print(f"Corrida single-hop greedy (n={args.symbols}): [bold]{elapsed:.2f}s[/bold]")


if __name__ == "__main__":  # pragma: no cover
    main()
