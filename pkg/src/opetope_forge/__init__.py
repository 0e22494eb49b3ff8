"""Executable higher-category constructions at desk scale."""

__version__ = "0.1.0"
