"""Tabla de grados D(r) para Adaptive Network Coding."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Optional


def decodable_probability(n: int, r: int, d: int) -> Fraction:
    """Probabilidad de que un d-subconjunto uniforme de n símbolos tenga
    exactamente d-1 símbolos dentro de un conjunto recuperado de tamaño r.

    Es decir C(r, d-1) * C(n-r, 1) / C(n, d), calculada en forma exacta.
    """
    if d < 1 or d > n:
        return Fraction(0)
    return Fraction(comb(r, d - 1) * (n - r), comb(n, d))


@lru_cache(maxsize=64)
def _argmax_degrees(n: int) -> tuple[int, ...]:
    degrees = []
    for r in range(n + 1):
        best_d, best_value = 1, Fraction(-1)
        for d in range(1, min(r + 1, n) + 1):
            value = decodable_probability(n, r, d)
            # estrictamente mayor: los empates quedan en el d más chico
            if value > best_value:
                best_d, best_value = d, value
        degrees.append(best_d)
    return tuple(degrees)


@dataclass(frozen=True)
class DegreeTable:
    """D(r) para r ∈ [0, n]; siempre 1 <= D(r) <= n."""

    n: int
    degrees: tuple[int, ...]
    overrides: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.degrees) != self.n + 1:
            raise ValueError(f"Se esperaban {self.n + 1} grados, llegaron {len(self.degrees)}")
        for r, d in self.overrides.items():
            if not 0 <= r <= self.n:
                raise ValueError(f"r={r} fuera de [0, {self.n}]")
            if not 1 <= d <= self.n:
                raise ValueError(f"D({r})={d} fuera de [1, {self.n}]")

    def __call__(self, r: int) -> int:
        if r in self.overrides:
            return int(self.overrides[r])
        return self.degrees[r]

    def as_dict(self) -> dict[int, int]:
        return {r: self(r) for r in range(self.n + 1)}


def default_degree_table(n: int, overrides: Optional[Mapping[int, int]] = None) -> DegreeTable:
    """Tabla por defecto: argmax_d del grado con mayor probabilidad de ser decodificable.

    Con r = n no hay nada útil que enviar (todos los valores son 0) y D(n) = 1.

    Args:
        n: Tamaño del universo de símbolos
        overrides: Pares (r, D(r)) explícitos que reemplazan al argmax

    Raises:
        ValueError: si n < 1 o algún override está fuera de rango
    """
    if n < 1:
        raise ValueError("n debe ser >= 1")
    return DegreeTable(n=n, degrees=_argmax_degrees(n), overrides=dict(overrides or {}))
