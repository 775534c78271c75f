"""Curvas agregadas con intervalo de confianza normal."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

DEFAULT_Z = 1.96


class MetricsError(ValueError):
    """Error base de métricas."""


class MixedConfigError(MetricsError):
    """Se intentó agregar corridas de configuraciones distintas."""


@dataclass(frozen=True)
class AggregateCurve:
    """Media por punto x, semiancho del IC, desvío muestral y cantidad de muestras.

    ``carry_forward`` indica que cada muestra conserva su último valor más
    allá de su último x observado; si no, la muestra deja de contar.
    """

    x: np.ndarray
    mean: np.ndarray
    ci_half_width: np.ndarray
    n_samples: np.ndarray
    std: np.ndarray
    carry_forward: bool = True
    x_label: str = "received"
    z: float = DEFAULT_Z

    def __len__(self) -> int:
        return int(self.x.shape[0])

    @classmethod
    def empty(cls, x_label: str = "received", carry_forward: bool = True) -> "AggregateCurve":
        zeros = np.zeros(0)
        return cls(
            x=np.zeros(0, dtype=np.int64),
            mean=zeros,
            ci_half_width=zeros,
            n_samples=np.zeros(0, dtype=np.int64),
            std=zeros,
            carry_forward=carry_forward,
            x_label=x_label,
        )

    def value_at(self, x: int) -> float:
        idx = np.flatnonzero(self.x == x)
        if idx.size == 0:
            raise MetricsError(f"x={x} fuera de la curva")
        return float(self.mean[idx[0]])

    def extended(self, length: int) -> "AggregateCurve":
        """Curva sobre x = x0 .. x0+length-1, arrastrando o vaciando la cola."""
        extra = length - len(self)
        if extra <= 0:
            return self
        if len(self) == 0:
            raise MetricsError("No se puede extender una curva vacía")
        x = np.arange(int(self.x[0]), int(self.x[0]) + length)
        if self.carry_forward:

            def pad(a: np.ndarray) -> np.ndarray:
                return np.concatenate([a, np.repeat(a[-1:], extra)])

        else:

            def pad(a: np.ndarray) -> np.ndarray:
                return np.concatenate([a, np.zeros(extra, dtype=a.dtype)])

        return AggregateCurve(
            x=x,
            mean=pad(self.mean),
            ci_half_width=pad(self.ci_half_width),
            n_samples=pad(self.n_samples),
            std=pad(self.std),
            carry_forward=self.carry_forward,
            x_label=self.x_label,
            z=self.z,
        )


def aggregate_samples(
    values: np.ndarray,
    valid: np.ndarray,
    x: np.ndarray,
    z: float = DEFAULT_Z,
    carry_forward: bool = True,
    x_label: str = "received",
) -> AggregateCurve:
    """Agrega una matriz (muestras x puntos) considerando solo las celdas válidas."""
    n = valid.sum(axis=0).astype(np.int64)
    masked = np.where(valid, values, 0.0)
    mean = np.divide(masked.sum(axis=0), n, out=np.zeros(n.shape), where=n > 0)
    dev = np.where(valid, values - mean, 0.0)
    var = np.divide((dev * dev).sum(axis=0), n - 1, out=np.zeros(n.shape), where=n > 1)
    return _finish(x, mean, var, n, z, carry_forward, x_label)


def _finish(
    x: np.ndarray,
    mean: np.ndarray,
    var: np.ndarray,
    n: np.ndarray,
    z: float,
    carry_forward: bool,
    x_label: str,
) -> AggregateCurve:
    std = np.sqrt(np.maximum(var, 0.0))
    root_n = np.sqrt(n.astype(float))
    ci = z * np.divide(std, root_n, out=np.zeros(n.shape), where=n > 0)
    return AggregateCurve(
        x=x,
        mean=mean,
        ci_half_width=ci,
        n_samples=n,
        std=std,
        carry_forward=carry_forward,
        x_label=x_label,
        z=z,
    )


def merge_curves(curves: Sequence[AggregateCurve]) -> AggregateCurve:
    """Agregación exacta de curvas ya agregadas, ponderando por cantidad de muestras.

    Equivale a agregar de una vez todas las muestras subyacentes.
    """
    if not curves:
        raise MetricsError("No hay curvas para combinar")
    first = curves[0]
    if any(c.carry_forward != first.carry_forward or c.x_label != first.x_label for c in curves):
        raise MixedConfigError("Curvas de métricas distintas")
    non_empty = [c for c in curves if len(c)]
    if not non_empty:
        return first
    length = max(len(c) for c in non_empty)
    parts = [c.extended(length) for c in non_empty]

    n = np.sum([p.n_samples for p in parts], axis=0).astype(np.int64)
    total = np.sum([p.mean * p.n_samples for p in parts], axis=0)
    mean = np.divide(total, n, out=np.zeros(n.shape), where=n > 0)
    # suma de cuadrados centrada de cada parte más su corrimiento respecto de la media global
    ss = np.sum(
        [p.std**2 * np.maximum(p.n_samples - 1, 0) + p.n_samples * (p.mean - mean) ** 2 for p in parts],
        axis=0,
    )
    var = np.divide(ss, n - 1, out=np.zeros(n.shape), where=n > 1)
    return _finish(parts[0].x, mean, var, n, first.z, first.carry_forward, first.x_label)


def curve_distance(a: AggregateCurve, b: AggregateCurve) -> float:
    """Máxima diferencia absoluta de medias sobre el rango de x común."""
    common, ia, ib = np.intersect1d(a.x, b.x, return_indices=True)
    if common.size == 0:
        raise MetricsError("Las curvas no comparten puntos")
    return float(np.max(np.abs(a.mean[ia] - b.mean[ib])))
