"""A small s-expression reader that keeps source locations for error messages."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ParseError


@dataclass(frozen=True)
class Sym:
    text: str
    line: int
    column: int

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class SList:
    items: tuple[Node, ...]
    line: int
    column: int

    def __str__(self) -> str:
        return "(" + " ".join(str(item) for item in self.items) + ")"

    @property
    def head(self) -> str | None:
        if self.items and isinstance(self.items[0], Sym):
            return self.items[0].text
        return None


Node = Sym | SList


def read(text: str) -> list[Node]:
    """Read every top-level form of ``text``.  ``;`` starts a comment."""
    forms: list[Node] = []
    stack: list[tuple[list[Node], int, int]] = []
    line, column = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, column = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            column += 1
            continue
        if ch == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch == "(":
            stack.append(([], line, column))
            i += 1
            column += 1
            continue
        if ch == ")":
            if not stack:
                raise ParseError("unbalanced ')'", line, column, ("(", "symbol"))
            items, l0, c0 = stack.pop()
            node = SList(tuple(items), l0, c0)
            (stack[-1][0] if stack else forms).append(node)
            i += 1
            column += 1
            continue
        start, c0 = i, column
        while i < len(text) and not text[i].isspace() and text[i] not in "();":
            i += 1
            column += 1
        sym = Sym(text[start:i], line, c0)
        if not stack:
            raise ParseError(f"bare symbol {sym.text!r} at top level", line, c0, ("(",))
        stack[-1][0].append(sym)
    if stack:
        _, l0, c0 = stack[-1]
        raise ParseError("unclosed '('", l0, c0, (")",))
    return forms
