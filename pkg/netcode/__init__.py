"""netcode: simulador de network coding informado sobre GF(2)."""

__version__ = "0.1.0"
