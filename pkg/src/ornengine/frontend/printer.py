"""Print engine objects back as session-language definitions.

``read`` followed by the definition forms gives back equal objects, which
the tests check.  Sets that have no surface syntax (literal sets, inverse
images of unnamed functions) cannot be printed.
"""

from __future__ import annotations

from ..desc import DescCode, DescFam, One, Pi, Sigma, Var
from ..finset import Enum, Eq, FinFn, FinSetExpr, InvImg, Named, Prod, Sum, Value
from ..ornament import Delete, Insert, OPi, OrnCode, OrnFam, OSigma, OUnit, VarInv


def setexpr(s: FinSetExpr, fns: dict[FinFn, str] | None = None) -> str:
    match s:
        case Enum(labels):
            if labels and labels == tuple(str(k) for k in range(len(labels))):
                return f"(nat< {len(labels)})"
            return "(enum" + "".join(f" {n}" for n in labels) + ")"
        case Sum(a, b):
            return f"(sum {setexpr(a, fns)} {setexpr(b, fns)})"
        case Prod(a, b):
            return f"(prod {setexpr(a, fns)} {setexpr(b, fns)})"
        case Eq(a, b):
            return f"(eq {a} {b})"
        case InvImg(f, t) if fns and f in fns:
            return f"(inv {fns[f]} {t})"
        case Named(alias):
            return alias
    raise ValueError(f"{s!r} has no surface syntax")


def _table(rows, show) -> str:
    return "(" + " ".join(f"({v} {show(x)})" for v, x in rows) + ")"


def desccode(code: DescCode) -> str:
    match code:
        case Var(i):
            return f"(var {i})"
        case One():
            return "one"
        case Sigma(s, branches):
            return f"(sigma {setexpr(s)} {_table(branches, desccode)})"
        case Pi(s, branches):
            return f"(pi {setexpr(s)} {_table(branches, desccode)})"
    raise TypeError(f"not a description code: {code!r}")


def orncode(o: OrnCode) -> str:
    match o:
        case Insert(s, branches):
            return f"(insert {setexpr(s)} {_table(branches, orncode)})"
        case Delete(w, rest):
            return f"(delete {w} {orncode(rest)})"
        case VarInv(w):
            return f"(var-inv {w})"
        case OUnit():
            return "one"
        case OSigma(branches):
            return f"(sigma {_table(branches, orncode)})"
        case OPi(branches):
            return f"(pi {_table(branches, orncode)})"
    raise TypeError(f"not an ornament code: {o!r}")


def _rows(rows: tuple[tuple[Value, str], ...]) -> str:
    return "(" + "\n   ".join(f"({j} {text})" for j, text in rows) + ")"


def fn_def(name: str, f: FinFn) -> str:
    return f"(fn {name} {setexpr(f.dom)} {setexpr(f.cod)}\n  {_rows(f.table)})"


def desc_def(name: str, d: DescFam) -> str:
    rows = tuple((j, desccode(code)) for j, code in d.at)
    return f"(desc {name} {setexpr(d.in_idx)} {setexpr(d.out_idx)}\n  {_rows(rows)})"


def orn_def(name: str, o: OrnFam, base: str, u: str, v: str) -> str:
    rows = tuple((j, orncode(code)) for j, code in o.at)
    return f"(orn {name} {base} {u} {v}\n  {_rows(rows)})"
