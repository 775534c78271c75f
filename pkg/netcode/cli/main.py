"""Punto de entrada de línea de comandos.

Ejemplos:
    python -m netcode --scenario single_hop --algorithm greedy --runs 50 --seed 7 --out ./res
    python -m netcode --figure 1hop --runs 200 --workers 8

Precedencia del escenario: preset de figura < archivo --config < flags explícitos.
Las claves de campaña del archivo (runs, seed, workers, out, figure,
max_incomplete) ceden ante los flags y ganan sobre los settings NETCODE_*.

Códigos de salida: 0 éxito, 2 error de uso o configuración, 3 demasiadas
corridas incompletas, 4 error de escritura.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Optional, Sequence

from pydantic import ValidationError
from rich.console import Console

from netcode.cli.campaign import (
    Campaign,
    render_summary_table,
    run_campaign,
    summarize,
    write_summary_csv,
    write_variant_outputs,
)
from netcode.cli.presets import FIGURE_PRESETS, Variant
from netcode.engine.simulator import topology_for
from netcode.shared.config import (
    AlgorithmKind,
    CampaignOptions,
    DecoderKind,
    ScenarioConfig,
    ScenarioKind,
    Scheduling,
    get_settings,
    load_toml,
    split_campaign_keys,
)
from netcode.shared.logging_config import get_logger
from netcode.topology.builders import export_edge_list

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCOMPLETE = 3
EXIT_IO = 4

# flag -> campo de ScenarioConfig
FLAG_FIELDS = {
    "scenario": "scenario",
    "algorithm": "algorithm",
    "decoder": "decoder",
    "nodes": "n_nodes",
    "symbols": "n_symbols",
    "erasure": "erasure_p",
    "scheduling": "scheduling",
    "degree_cap": "degree_cap",
    "max_rounds": "max_rounds",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netcode",
        description="Simulador de network coding informado sobre GF(2)",
    )
    parser.add_argument("--scenario", choices=[k.value for k in ScenarioKind])
    parser.add_argument("--algorithm", choices=[k.value for k in AlgorithmKind])
    parser.add_argument("--decoder", choices=[k.value for k in DecoderKind])
    parser.add_argument("--figure", choices=sorted(FIGURE_PRESETS), help="Preset de figura")
    parser.add_argument("--runs", type=int, help="Corridas por variante")
    parser.add_argument("--seed", type=int, help="Semilla base")
    parser.add_argument("--out", type=Path)
    parser.add_argument("--nodes", type=int)
    parser.add_argument("--symbols", type=int)
    parser.add_argument("--erasure", type=float)
    parser.add_argument("--scheduling", choices=[k.value for k in Scheduling])
    parser.add_argument("--degree-cap", dest="degree_cap", type=int)
    parser.add_argument("--max-rounds", dest="max_rounds", type=int)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--config", type=Path, help="Archivo TOML de escenario y campaña")
    parser.add_argument(
        "--max-incomplete",
        dest="max_incomplete",
        type=float,
        help="Fracción tolerada de corridas incompletas",
    )
    parser.add_argument(
        "--export-topology",
        dest="export_topology",
        type=Path,
        help="Exporta la topología de la primera corrida (ronda 0) como lista de aristas",
    )
    return parser


def _first(*values: Any) -> Any:
    return next(v for v in values if v is not None)


def resolve_campaign(args: argparse.Namespace) -> Campaign:
    """Combina preset, archivo de configuración, flags y settings.

    Escenario: preset < archivo < flags. Campaña (runs, seed, workers, out,
    max_incomplete): settings ``NETCODE_*`` < archivo < flags.

    Raises:
        ValidationError: configuración inválida
        ValueError: preset desconocido en el archivo
        OSError / tomllib.TOMLDecodeError: archivo de configuración ilegible
    """
    file_data: dict[str, Any] = {}
    options = CampaignOptions()
    if args.config:
        file_data, options = split_campaign_keys(load_toml(args.config))

    data: dict[str, Any] = {}
    variants: Optional[tuple[Variant, ...]] = None
    figure = args.figure or options.figure
    if figure:
        if figure not in FIGURE_PRESETS:
            raise ValueError(f"Preset desconocido: {figure}")
        preset = FIGURE_PRESETS[figure]
        data.update(preset.scenario)
        variants = preset.variants
    data.update(file_data)
    flags = {field: getattr(args, flag) for flag, field in FLAG_FIELDS.items()}
    data.update({k: v for k, v in flags.items() if v is not None})

    settings = get_settings().campaign
    seed = _first(args.seed, options.seed, settings.seed)
    data["seed"] = seed
    base = ScenarioConfig.model_validate(data)

    if variants is None:
        variants = (Variant(base.algorithm, base.decoder, base.degree_cap),)
    elif args.algorithm or args.decoder:
        # los flags reemplazan el campo en cada variante del preset
        narrowed = (
            replace(
                v,
                algorithm=base.algorithm if args.algorithm else v.algorithm,
                decoder=base.decoder if args.decoder else v.decoder,
            )
            for v in variants
        )
        variants = tuple(dict.fromkeys(narrowed))
    return Campaign(
        base=base,
        variants=variants,
        runs=_first(args.runs, options.runs, settings.runs),
        seed_base=seed,
        out_dir=Path(_first(args.out, options.out, settings.out_dir)),
        workers=_first(args.workers, options.workers, settings.workers),
        max_incomplete=_first(args.max_incomplete, options.max_incomplete, settings.max_incomplete_fraction),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    console = Console()

    if (args.runs is not None and args.runs < 1) or (args.workers is not None and args.workers < 1):
        parser.error("--runs y --workers deben ser >= 1")

    try:
        campaign = resolve_campaign(args)
    except ValidationError as exc:
        console.print(f"[red]Configuración inválida:[/red]\n{exc}")
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        console.print(f"[red]No se pudo leer la configuración: {exc}[/red]")
        return EXIT_USAGE

    logger.info(
        "campaign_started",
        scenario=campaign.base.scenario.value,
        variants=[v.label for v in campaign.variants],
        runs=campaign.runs,
        seed=campaign.seed_base,
    )

    try:
        campaign.out_dir.mkdir(parents=True, exist_ok=True)
        if args.export_topology:
            first = campaign.configs(campaign.variants[0])[0]
            export_edge_list(topology_for(first), args.export_topology)
    except OSError as exc:
        console.print(f"[red]Error de escritura: {exc}[/red]")
        return EXIT_IO

    z = get_settings().campaign.ci_z
    results = run_campaign(campaign, workers=campaign.workers)
    rows = [summarize(variant, logs, z=z) for variant, logs in results.items()]

    try:
        for variant, logs in results.items():
            write_variant_outputs(variant, logs, campaign.out_dir, z=z)
        write_summary_csv(rows, campaign.out_dir / "summary.csv")
    except OSError as exc:
        console.print(f"[red]Error de escritura: {exc}[/red]")
        return EXIT_IO

    render_summary_table(rows, console)

    total = sum(row.runs for row in rows)
    incomplete = sum(row.incomplete_runs for row in rows)
    if total and incomplete / total > campaign.max_incomplete:
        console.print(
            f"[yellow]{incomplete}/{total} corridas incompletas "
            f"(tolerancia {campaign.max_incomplete:.0%})[/yellow]"
        )
        return EXIT_INCOMPLETE
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
