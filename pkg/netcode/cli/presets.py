"""Presets de campañas: parámetros de escenario y variantes por figura."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from netcode.shared.config import AlgorithmKind, DecoderKind


@dataclass(frozen=True)
class Variant:
    """Combinación algoritmo x decodificador (y grado máximo opcional)."""

    algorithm: AlgorithmKind
    decoder: DecoderKind
    degree_cap: Optional[int] = None

    @property
    def label(self) -> str:
        base = f"{self.algorithm.value}_{self.decoder.value}"
        return base if self.degree_cap is None else f"{base}_cap{self.degree_cap}"

    def overrides(self) -> dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "decoder": self.decoder,
            "degree_cap": self.degree_cap,
        }


@dataclass(frozen=True)
class Preset:
    scenario: dict[str, Any]
    variants: tuple[Variant, ...]


_FEEDBACK_AND_ANC = (
    AlgorithmKind.GREEDY,
    AlgorithmKind.EQUALIZING,
    AlgorithmKind.OPPORTUNISTIC,
    AlgorithmKind.ANC,
)
_WITH_RLNC = _FEEDBACK_AND_ANC + (AlgorithmKind.SYSTEMATIC_RLNC,)


def _variants(algorithms: tuple[AlgorithmKind, ...], decoder: DecoderKind) -> tuple[Variant, ...]:
    return tuple(Variant(a, decoder) for a in algorithms)


_MULTI_HOP = {"n_nodes": 100, "target_degree": 8.0, "max_rounds": 2000}

FIGURE_PRESETS: dict[str, Preset] = {
    "1hop": Preset(
        scenario={"scenario": "single_hop", "n_nodes": 100, "n_symbols": 100, "erasure_p": 0.5},
        variants=_variants(_FEEDBACK_AND_ANC, DecoderKind.SIMPLE),
    ),
    "1hop-full": Preset(
        scenario={"scenario": "single_hop", "n_nodes": 100, "n_symbols": 100, "erasure_p": 0.5},
        variants=_variants(_WITH_RLNC, DecoderKind.FULL),
    ),
    "grid": Preset(
        scenario={"scenario": "grid", **_MULTI_HOP},
        variants=_variants(_FEEDBACK_AND_ANC, DecoderKind.SIMPLE)
        + (
            Variant(AlgorithmKind.GREEDY, DecoderKind.SIMPLE, degree_cap=1),
            Variant(AlgorithmKind.EQUALIZING, DecoderKind.SIMPLE, degree_cap=1),
        ),
    ),
    "random": Preset(
        scenario={"scenario": "random", **_MULTI_HOP},
        variants=_variants(_FEEDBACK_AND_ANC, DecoderKind.SIMPLE),
    ),
    "clustered": Preset(
        scenario={"scenario": "clustered", "n_clusters": 4, "bridges_per_pair": 1, **_MULTI_HOP},
        variants=_variants(_FEEDBACK_AND_ANC, DecoderKind.SIMPLE),
    ),
    "mobile": Preset(
        scenario={"scenario": "mobile", "speed_min": 2.0, "speed_max": 4.0, **_MULTI_HOP},
        variants=_variants(_FEEDBACK_AND_ANC, DecoderKind.SIMPLE),
    ),
    "mobile-full": Preset(
        scenario={"scenario": "mobile", "speed_min": 2.0, "speed_max": 4.0, **_MULTI_HOP},
        variants=_variants(_WITH_RLNC, DecoderKind.FULL),
    ),
}
