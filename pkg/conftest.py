"""Configuración global de pytest y fixtures compartidos."""

import os
from typing import Generator

import numpy as np
import pytest


@pytest.fixture(scope="session", autouse=True)
def setup_test_environment() -> Generator[None, None, None]:
    """Configura el entorno de testing."""
    # Logging silencioso en tests
    os.environ["LOG_LEVEL"] = "WARNING"
    os.environ["LOG_FORMAT"] = "console"

    from netcode.shared.config import get_settings
    from netcode.shared.logging_config import configure_logging

    get_settings.cache_clear()
    configure_logging()

    yield

    get_settings.cache_clear()


@pytest.fixture
def four_symbol_own():
    """Buffer del nodo que codifica: tiene s1..s4 (ids 0..3)."""
    from netcode.state.buffers import NodeBuffer

    return NodeBuffer.from_symbols(node=0, symbols={0, 1, 2, 3}, n=4)


@pytest.fixture
def four_symbol_table():
    """Vecinos del ejemplo de cuatro símbolos: N1={s1,s3,s4}, N2={s2}, N3={s2,s4}."""
    from netcode.state.buffers import NeighborTable

    return NeighborTable.from_symbol_sets({1: {0, 2, 3}, 2: {1}, 3: {1, 3}}, n=4)


@pytest.fixture
def rng() -> np.random.Generator:
    """Generador con semilla fija."""
    return np.random.default_rng(1234)


@pytest.fixture
def small_single_hop():
    """Escenario single-hop chico y rápido."""
    from netcode.shared.config import ScenarioConfig

    return ScenarioConfig(
        scenario="single_hop", n_nodes=10, n_symbols=12, erasure_p=0.3, max_rounds=400, seed=5
    )
