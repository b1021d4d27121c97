"""Castelnuovo-Mumford regularity, deficiency modules and homological degree."""

__version__ = "0.1.0"
