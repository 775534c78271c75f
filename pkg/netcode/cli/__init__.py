"""Driver de campañas por línea de comandos.

Uso:
    python -m netcode --figure 1hop --runs 50 --out ./res
"""

from __future__ import annotations

from netcode.cli.campaign import (
    Campaign,
    SummaryRow,
    emit_csv,
    run_campaign,
    summarize,
    write_summary_csv,
    write_variant_outputs,
)
from netcode.cli.main import EXIT_INCOMPLETE, EXIT_IO, EXIT_OK, EXIT_USAGE, build_parser
from netcode.cli.presets import FIGURE_PRESETS, Preset, Variant

__all__ = [
    "build_parser",
    "Campaign",
    "Variant",
    "Preset",
    "FIGURE_PRESETS",
    "SummaryRow",
    "run_campaign",
    "emit_csv",
    "summarize",
    "write_summary_csv",
    "write_variant_outputs",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_INCOMPLETE",
    "EXIT_IO",
]
