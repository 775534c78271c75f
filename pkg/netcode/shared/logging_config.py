"""Sistema de logging estructurado con structlog.

Características:
- JSON logging para campañas largas (parseable)
- Console logging para desarrollo
- Context binding (scenario, algorithm, decoder, seed)
"""

from __future__ import annotations

import logging
import sys
from typing import TYPE_CHECKING, Any

import structlog

from netcode.shared.config import LoggingConfig, get_settings

if TYPE_CHECKING:  # pragma: no cover
    from netcode.engine.runlog import RunLog


def configure_logging(config: LoggingConfig | None = None) -> None:
    """Configura el sistema de logging.

    Args:
        config: Configuración de logging (usa settings si es None)
    """
    if config is None:
        config = get_settings().logging

    processors: list[Any] = [
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    if config.format == "json":
        processors.append(structlog.processors.JSONRenderer(sort_keys=True))
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=sys.stdout.isatty()))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    logging.basicConfig(
        format="%(message)s",
        stream=sys.stdout,
        level=getattr(logging, config.level.value),
        force=True,
    )


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Obtiene un logger con el nombre especificado.

    Args:
        name: Nombre del logger (usualmente __name__)

    Returns:
        Logger configurado
    """
    return structlog.get_logger(name)


def get_run_logger(
    name: str,
    scenario: str | None = None,
    algorithm: str | None = None,
    decoder: str | None = None,
    seed: int | None = None,
    **extra: Any,
) -> structlog.stdlib.BoundLogger:
    """Obtiene un logger con el contexto de una corrida.

    Args:
        name: Nombre del logger
        scenario: Escenario simulado
        algorithm: Algoritmo de selección
        decoder: Decodificador
        seed: Semilla de la corrida
        **extra: Contexto adicional

    Returns:
        Logger con contexto
    """
    logger = get_logger(name)

    context: dict[str, Any] = {}
    if scenario:
        context["scenario"] = scenario
    if algorithm:
        context["algorithm"] = algorithm
    if decoder:
        context["decoder"] = decoder
    if seed is not None:
        context["seed"] = seed
    if extra:
        context.update(extra)

    return logger.bind(**context) if context else logger


def log_run_summary(logger: structlog.stdlib.BoundLogger, log: "RunLog") -> None:
    """Loggea el resumen de una corrida terminada.

    Args:
        logger: Logger con contexto
        log: Traza de la corrida
    """
    delays = [t.delay for t in log.traces.values() if t.completed_at is not None]
    event = "run_completed" if log.complete else "run_incomplete"
    logger.info(
        event,
        rounds=log.rounds,
        transmissions=log.transmissions,
        nodes=len(log.traces),
        completed_nodes=len(delays),
        mean_delay=round(sum(delays) / len(delays), 3) if delays else None,
        max_delay=max(delays) if delays else None,
    )


# Configurar logging al importar (puede ser sobreescrito después)
try:
    configure_logging()
except Exception:
    # Permite importar el módulo aunque el entorno tenga valores inválidos
    pass
