"""Pullback coverings from hypergeometric to Heun equations: patterns, Belyi maps,
monodromy counts and nonexistence certificates."""

__version__ = "0.1.0"
