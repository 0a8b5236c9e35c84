"""Quantum communication protocols built on Bell and GHZ entanglement, simulated on state vectors."""

__version__ = "0.1.0"
