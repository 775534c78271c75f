"""Campañas: variantes x semillas, ejecución en paralelo y escritura de CSVs."""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from rich.console import Console
from rich.table import Table

from netcode.cli.presets import Variant
from netcode.engine.runlog import RunLog
from netcode.engine.simulator import run
from netcode.metrics.aggregate import DEFAULT_Z, AggregateCurve
from netcode.metrics.curves import avg_degree_curve, delay_curve, potential_curve, recovery_curve
from netcode.metrics.reports import full_recovery_point, network_recovery_point, packet_delay
from netcode.shared.config import ScenarioConfig
from netcode.shared.logging_config import get_logger

logger = get_logger(__name__)

CSV_DECIMALS = 6


@dataclass(frozen=True)
class Campaign:
    """Todas las variantes corren las mismas semillas (comparación pareada)."""

    base: ScenarioConfig
    variants: tuple[Variant, ...]
    runs: int
    seed_base: int
    out_dir: Path
    workers: int = 1
    max_incomplete: float = 0.0

    @property
    def seeds(self) -> range:
        return range(self.seed_base, self.seed_base + self.runs)

    def configs(self, variant: Variant) -> list[ScenarioConfig]:
        data = self.base.model_dump()
        data.update(variant.overrides())
        return [ScenarioConfig.model_validate({**data, "seed": seed}) for seed in self.seeds]


def run_campaign(campaign: Campaign, workers: int = 1) -> dict[Variant, list[RunLog]]:
    """Ejecuta todas las corridas; el resultado conserva el orden de las semillas."""
    results: dict[Variant, list[RunLog]] = {}
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for variant in campaign.variants:
            configs = campaign.configs(variant)
            logs = list(pool.map(run, configs)) if pool else [run(c) for c in configs]
            results[variant] = logs
            logger.info(
                "campaign_variant_done",
                variant=variant.label,
                runs=len(logs),
                incomplete=sum(not log.complete for log in logs),
            )
    finally:
        if pool is not None:
            pool.shutdown()
    return results


def _fmt(value: float) -> str:
    return f"{value:.{CSV_DECIMALS}f}"


def emit_csv(curve: AggregateCurve, path: str | Path) -> Path:
    """Escribe ``<x>,mean,ci_half,n`` con decimales fijos (una fila por x).

    Raises:
        OSError: si no se puede escribir el archivo
    """
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([curve.x_label, "mean", "ci_half", "n"])
        for x, mean, ci, n in zip(curve.x, curve.mean, curve.ci_half_width, curve.n_samples):
            writer.writerow([int(x), _fmt(float(mean)), _fmt(float(ci)), int(n)])
    logger.debug("csv_written", path=str(path), rows=len(curve))
    return path


METRIC_CURVES = {
    "recovery": recovery_curve,
    "degree": avg_degree_curve,
    "delay": delay_curve,
    "potential": potential_curve,
}


def write_variant_outputs(
    variant: Variant, logs: Sequence[RunLog], out_dir: Path, z: float = DEFAULT_Z
) -> list[Path]:
    """Un CSV por métrica: ``<algoritmo>_<decodificador>_<métrica>.csv``."""
    return [
        emit_csv(curve_fn(logs, z=z), out_dir / f"{variant.label}_{metric}.csv")
        for metric, curve_fn in METRIC_CURVES.items()
    ]


@dataclass(frozen=True)
class SummaryRow:
    variant: str
    runs: int
    incomplete_runs: int
    mean_delay: float
    max_delay: Optional[int]
    recovery_point: float
    recovery_ci: float
    censored_nodes: int
    network_point: float = float("nan")


def summarize(variant: Variant, logs: Sequence[RunLog], z: float = DEFAULT_Z) -> SummaryRow:
    """Retardo medio y máximo sobre (nodo, corrida) y punto de recuperación completa."""
    delays: list[int] = []
    worst: Optional[int] = None
    for log in logs:
        report = packet_delay(log)
        delays.extend(report.per_node.values())
        if report.max is not None:
            worst = report.max if worst is None else max(worst, report.max)
    point = full_recovery_point(logs, z=z)
    return SummaryRow(
        variant=variant.label,
        runs=len(logs),
        incomplete_runs=sum(not log.complete for log in logs),
        mean_delay=sum(delays) / len(delays) if delays else math.nan,
        max_delay=worst,
        recovery_point=point.mean,
        recovery_ci=point.ci_half_width,
        censored_nodes=point.censored,
        network_point=network_recovery_point(logs, z=z).mean,
    )


SUMMARY_HEADER = [
    "variant",
    "runs",
    "incomplete_runs",
    "mean_delay",
    "max_delay",
    "full_recovery_point",
    "full_recovery_ci_half",
    "censored_nodes",
    "network_recovery_point",
]


def _cell(value: Optional[float]) -> str:
    if value is None or math.isnan(value):
        return ""
    return _fmt(value)


def write_summary_csv(rows: Iterable[SummaryRow], path: str | Path) -> Path:
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER)
        for row in rows:
            writer.writerow(
                [
                    row.variant,
                    row.runs,
                    row.incomplete_runs,
                    _cell(row.mean_delay),
                    "" if row.max_delay is None else row.max_delay,
                    _cell(row.recovery_point),
                    _cell(row.recovery_ci),
                    row.censored_nodes,
                    _cell(row.network_point),
                ]
            )
    logger.debug("csv_written", path=str(path))
    return path


def render_summary_table(rows: Sequence[SummaryRow], console: Optional[Console] = None) -> Table:
    """Tabla rich con el resumen de la campaña."""
    table = Table(title="Resumen de la campaña")
    for name in SUMMARY_HEADER:
        table.add_column(name, justify="left" if name == "variant" else "right")
    for row in rows:
        table.add_row(
            row.variant,
            str(row.runs),
            str(row.incomplete_runs),
            _cell(row.mean_delay) or "-",
            "-" if row.max_delay is None else str(row.max_delay),
            _cell(row.recovery_point) or "-",
            _cell(row.recovery_ci) or "-",
            str(row.censored_nodes),
            _cell(row.network_point) or "-",
        )
    if console is not None:
        console.print(table)
    return table
