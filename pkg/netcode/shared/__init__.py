"""Shared utilities for netcode (configuración y logging)."""
