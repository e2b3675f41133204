"""Sessions: a named environment built up by definitions and commands.

Definitions (``set``, ``fn``, ``desc``, ``orn``, ``alg``) are validated
before binding and print nothing.  Every other form is a command and
produces exactly one output record.  A definition that fails validation,
or a form that does not parse, aborts the session.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..desc import Algebra, DescFam, check_desc, validate_algebra
from ..errors import EngineError, ParseError, UnboundName, ValidationError
from ..finset import FinFn, Lit, validate_fn
from ..ornament import OrnFam, check_orn
from . import syntax
from .sexpr import Node, SList, read

DEFINITIONS = ("set", "fn", "desc", "orn", "alg")

# kinds of bound objects; a name may be reused across kinds but not within one
KINDS = ("set", "fn", "desc", "orn", "alg", "cont", "cart", "pullback")


@dataclass
class Session:
    depth: int = 4
    env: dict[str, dict[str, Any]] = field(default_factory=lambda: {k: {} for k in KINDS})
    log: list[str] = field(default_factory=list)
    records: list[dict[str, Any]] = field(default_factory=list)
    aborted: bool = False

    # -- environment ------------------------------------------------------

    def bind(self, kind: str, name: Node, obj: Any) -> Any:
        key = syntax.sym(name)
        if key in self.env[kind]:
            raise ValidationError(f"{kind} {key} is already defined", [f"duplicate name {key}"])
        self.env[kind][key] = obj
        return obj

    def lookup(self, kind: str | tuple[str, ...], name: Node) -> Any:
        key = syntax.sym(name)
        for k in (kind,) if isinstance(kind, str) else kind:
            if key in self.env[k]:
                return self.env[k][key]
        raise UnboundName(f"no {kind if isinstance(kind, str) else ' or '.join(kind)} named {key}")

    def kind_of(self, name: Node, kinds: tuple[str, ...]) -> str:
        key = syntax.sym(name)
        for k in kinds:
            if key in self.env[k]:
                return k
        raise UnboundName(f"no {' or '.join(kinds)} named {key}")

    # -- evaluation -------------------------------------------------------

    def load(self, text: str) -> Session:
        """Read ``text`` completely, then evaluate its forms in order."""
        try:
            forms = read(text)
            for node in forms:
                check_head(node)
        except ParseError as err:
            self.abort("(read)", err)
        for node in forms:
            self.evaluate(node)
        return self

    def evaluate(self, node: SList) -> None:
        """Definitions that fail, and commands that do not parse or validate, abort the session."""
        self.log.append(str(node))
        try:
            if node.head in DEFINITIONS:
                define(self, node)
            else:
                self.records.append(run_command(self, node))
        except EngineError as err:
            self.abort(str(node), err)

    def abort(self, cmd: str, err: EngineError):
        self.records.append(error_record(cmd, err))
        self.aborted = True
        raise err

    @property
    def exit_code(self) -> int:
        if self.aborted:
            return 2
        return 1 if any(r["status"] in ("fail", "error") for r in self.records) else 0


def check_head(node: Node) -> None:
    from .commands import COMMANDS

    if not isinstance(node, SList) or node.head is None:
        raise ParseError("a form must start with a symbol", node.line, node.column, ("symbol",))
    if node.head not in DEFINITIONS and node.head not in COMMANDS:
        raise ParseError(f"unknown form {node.head!r}", node.line, node.column, DEFINITIONS + tuple(sorted(COMMANDS)))


def parse_session(text: str, depth: int = 4) -> Session:
    return Session(depth=depth).load(text)


def error_record(cmd: str, err: EngineError) -> dict[str, Any]:
    error: dict[str, Any] = {"code": err.code, "message": err.message}
    if isinstance(err, ParseError):
        error.update(line=err.line, column=err.column, expected=list(err.expected))
    return {"cmd": cmd, "status": "error", "error": error}


def run_command(session: Session, node: SList) -> dict[str, Any]:
    from .commands import COMMANDS

    try:
        payload = COMMANDS[node.head](session, node)
    except (ParseError, ValidationError):
        raise
    except EngineError as err:
        return error_record(str(node), err)
    return {"cmd": str(node), "status": "ok", **payload}


# --------------------------------------------------------------------------
# Definitions


def _args(node: SList, arity: int) -> tuple[Node, ...]:
    return syntax.form(node, node.head, arity)


def _require(problems: list[str], what: str) -> None:
    if problems:
        raise ValidationError(f"{what}: " + "; ".join(problems), problems)


def define(session: Session, node: SList) -> None:
    look = session.lookup
    match node.head:
        case "set":
            name, s = _args(node, 2)
            session.bind("set", name, syntax.setexpr(s, look))
        case "fn":
            name, dom, cod, rows = _args(node, 4)
            f = syntax.fn_table(rows, syntax.setexpr(dom, look), syntax.setexpr(cod, look))
            _require(validate_fn(f), f"function {name}")
            session.bind("fn", name, FinFn.tabulate(f.dom, f.cod, f))
        case "desc":
            name, i, j, rows = _args(node, 4)
            d = DescFam(
                syntax.setexpr(i, look),
                syntax.setexpr(j, look),
                syntax.table(rows, lambda n: syntax.desccode(n, look), "description entry"),
            )
            try:
                check_desc(d)
            except ValidationError as err:
                raise ValidationError(f"description {name}: {err.message}", err.violations) from None
            session.bind("desc", name, DescFam.tabulate(d.in_idx, d.out_idx, d))
        case "orn":
            name, base, u, v, rows = _args(node, 5)
            o = OrnFam(
                look("desc", base),
                look("fn", u),
                look("fn", v),
                syntax.table(rows, lambda n: syntax.orncode(n, look), "ornament entry"),
            )
            try:
                check_orn(o)
            except ValidationError as err:
                raise ValidationError(f"ornament {name}: {err.message}", err.violations) from None
            session.bind("orn", name, OrnFam.tabulate(o.base, o.u, o.v, o))
        case "alg":
            name, desc, fam, rows = _args(node, 4)
            d = look("desc", desc)
            carrier = syntax.famspec(fam, d.in_idx, look)
            tables = syntax.table(rows, lambda n: syntax.table(n, syntax.value, "algebra entry"), "algebra table")
            alg = Algebra(
                d,
                carrier,
                tuple((i, FinFn(Lit(tuple(p for p, _ in t)), carrier(i), t)) for i, t in tables),
            )
            _require(validate_algebra(alg), f"algebra {name}")
            session.bind("alg", name, alg)

