"""Exact lambda-bracket calculus: Lie and Leibniz conformal algebras, modules,
conformal cohomology and 2-term conformal L-infinity algebras."""

__version__ = "0.1.0"
