"""Proportional-edge proximity catch digraphs and their edge densities."""

__version__ = "0.1.0"
