"""Saturation of purely inseparable torsors in characteristic p, computed exactly."""

__version__ = "0.1.0"
