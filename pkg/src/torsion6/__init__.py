"""Exact re-execution of the computations behind the classification of
torsion of rational elliptic curves over sextic number fields."""

__version__ = "0.1.0"
