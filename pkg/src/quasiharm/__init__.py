"""Quasiharmonic polynomials for Coxeter groups: exact Dunkl-operator computations."""
__version__ = "0.1.0"
