"""galwalk: random walks on linear groups and the Galois groups of their
characteristic polynomials, identified per connected-component coset."""

__version__ = "0.1.0"
