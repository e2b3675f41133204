"""Turn s-expressions into engine objects.

Names of sets and functions are looked up through ``lookup``; everything
else is self-contained.  Malformed input raises ``ParseError`` pointing at
the offending node.
"""

from __future__ import annotations

from collections.abc import Callable
from typing import Any

from ..desc import ONE, DescCode, Pi, Sigma, Var
from ..errors import ParseError, ValidationError
from ..finset import (
    REFL,
    UNIT,
    Con,
    Enum,
    Eq,
    Family,
    FinFn,
    FinSetExpr,
    InL,
    InR,
    InvImg,
    InvWit,
    Label,
    Pair,
    Prod,
    Sum,
    Value,
    nat,
)
from ..ornament import OUNIT, Delete, Insert, OPi, OrnCode, OSigma, var_inv
from .sexpr import Node, SList, Sym

Lookup = Callable[[str, Node], Any]

SET_HEADS = ("enum", "sum", "prod", "eq", "inv", "nat<")
VALUE_HEADS = ("num", "pair", "inl", "inr", "inv-wit", "con")


def fail(node: Node, message: str, *expected: str) -> ParseError:
    return ParseError(message, node.line, node.column, expected)


def sym(node: Node, what: str = "name") -> str:
    if not isinstance(node, Sym):
        raise fail(node, f"expected a {what}, found a list", what)
    return node.text


def integer(node: Node) -> int:
    text = sym(node, "integer")
    if not text.isdigit():
        raise fail(node, f"expected a non-negative integer, found {text!r}", "integer")
    return int(text)


def form(node: Node, head: str, arity: int) -> tuple[Node, ...]:
    """The arguments of ``(head arg...)`` with exactly ``arity`` arguments."""
    assert isinstance(node, SList)
    args = node.items[1:]
    if len(args) != arity:
        raise fail(node, f"({head} ...) takes {arity} argument(s), found {len(args)}")
    return args


def value(node: Node) -> Value:
    if isinstance(node, Sym):
        match node.text:
            case "unit":
                return UNIT
            case "refl":
                return REFL
            case text:
                return Label(text)
    match node.head:
        case "num":
            (n,) = form(node, "num", 1)
            return Label(str(integer(n)))
        case "pair":
            a, b = form(node, "pair", 2)
            return Pair(value(a), value(b))
        case "inl":
            (a,) = form(node, "inl", 1)
            return InL(value(a))
        case "inr":
            (a,) = form(node, "inr", 1)
            return InR(value(a))
        case "inv-wit":
            (a,) = form(node, "inv-wit", 1)
            return InvWit(value(a))
        case "con":
            (a,) = form(node, "con", 1)
            return Con(value(a))
    raise fail(node, f"not a value: {node}", "name", *VALUE_HEADS)


def setexpr(node: Node, lookup: Lookup) -> FinSetExpr:
    if isinstance(node, Sym):
        return lookup("set", node)
    match node.head:
        case "enum":
            return Enum(tuple(sym(n, "label") for n in node.items[1:]))
        case "sum":
            a, b = form(node, "sum", 2)
            return Sum(setexpr(a, lookup), setexpr(b, lookup))
        case "prod":
            a, b = form(node, "prod", 2)
            return Prod(setexpr(a, lookup), setexpr(b, lookup))
        case "eq":
            a, b = form(node, "eq", 2)
            return Eq(value(a), value(b))
        case "inv":
            f, t = form(node, "inv", 2)
            return InvImg(lookup("fn", f), value(t))
        case "nat<":
            (n,) = form(node, "nat<", 1)
            return nat(integer(n))
    raise fail(node, f"not a set expression: {node}", "name", *SET_HEADS)


def table(node: Node, entry: Callable[[Node], Any], what: str = "branch") -> tuple[tuple[Value, Any], ...]:
    """``((val x)*)`` as a tuple of pairs."""
    if not isinstance(node, SList) or node.head is not None:
        raise fail(node, f"expected a {what} table ((value ...) ...)", "(")
    rows = []
    for row in node.items:
        if not isinstance(row, SList) or len(row.items) != 2:
            raise fail(row, f"a {what} is (value entry)", "(")
        rows.append((value(row.items[0]), entry(row.items[1])))
    return tuple(rows)


def desccode(node: Node, lookup: Lookup) -> DescCode:
    if isinstance(node, Sym):
        if node.text == "one":
            return ONE
        raise fail(node, f"not a description code: {node.text}", "one", "(var", "(sigma", "(pi")
    match node.head:
        case "var":
            (i,) = form(node, "var", 1)
            return Var(value(i))
        case "sigma" | "pi" as head:
            s, branches = form(node, head, 2)
            rows = table(branches, lambda n: desccode(n, lookup))
            return (Sigma if head == "sigma" else Pi)(setexpr(s, lookup), rows)
    raise fail(node, f"not a description code: {node}", "one", "(var", "(sigma", "(pi")


def orncode(node: Node, lookup: Lookup) -> OrnCode:
    if isinstance(node, Sym):
        if node.text == "one":
            return OUNIT
        raise fail(node, f"not an ornament code: {node.text}", "one", "(insert", "(delete", "(var-inv")
    match node.head:
        case "insert":
            s, branches = form(node, "insert", 2)
            return Insert(setexpr(s, lookup), table(branches, lambda n: orncode(n, lookup)))
        case "delete":
            w, rest = form(node, "delete", 2)
            return Delete(value(w), orncode(rest, lookup))
        case "var-inv":
            (i,) = form(node, "var-inv", 1)
            return var_inv(value(i))
        case "sigma":
            (branches,) = form(node, "sigma", 1)
            return OSigma(table(branches, lambda n: orncode(n, lookup)))
        case "pi":
            (branches,) = form(node, "pi", 1)
            return OPi(table(branches, lambda n: orncode(n, lookup)))
    raise fail(node, f"not an ornament code: {node}", "one", "(insert", "(delete", "(var-inv", "(sigma", "(pi")


def famspec(node: Node, index: FinSetExpr, lookup: Lookup) -> Family:
    """Either one set for every index, or a table ``((i set)*)``."""
    if isinstance(node, SList) and node.head is None:
        rows = dict(table(node, lambda n: setexpr(n, lookup), "family entry"))
        return Family.tabulate(index, lambda i: rows[i] if i in rows else _missing(node, i))
    return Family.const(index, setexpr(node, lookup))


def _missing(node: Node, i: Value):
    message = f"{node.line}:{node.column}: family gives no set for index {i}"
    raise ValidationError(message, [message])


def fn_table(node: Node, dom: FinSetExpr, cod: FinSetExpr) -> FinFn:
    return FinFn(dom, cod, table(node, value, "function entry"))
