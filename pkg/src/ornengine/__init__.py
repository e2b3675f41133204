"""Executable ornaments: descriptions, containers, ornaments and their constructions over finite index sets."""

__version__ = "0.1.0"
