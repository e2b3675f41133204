"""The session language: s-expression definitions and commands, one JSON record per command."""

from .session import Session, parse_session

__all__ = ["Session", "parse_session"]
