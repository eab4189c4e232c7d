"""Exact spectral sequences of filtered complexes, décalage, and flag filtrations."""
