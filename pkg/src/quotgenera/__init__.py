"""Generating series of virtual chi_{-y}-genera of Quot schemes on surfaces."""

__version__ = "0.1.0"
