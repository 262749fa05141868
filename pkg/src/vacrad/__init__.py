"""Radiation observables of an oscillating ground-state atom in the electromagnetic vacuum."""

__version__ = "0.1.0"
