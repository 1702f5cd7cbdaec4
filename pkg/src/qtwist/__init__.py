"""Exact computations with McKay quivers of cyclic subgroups of SL(3) and their
idempotent quotients: graded bases, resolutions, self-injectivity and
spherical-twist eligibility."""

__version__ = "0.1.0"
