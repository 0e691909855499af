"""Green's functions, SUSY partners and eigenvalue sum rules for 1-D Schrodinger operators."""

__version__ = "0.1.0"
