"""``engine run FILE [--cmd FORM]... [--depth N] [--out PATH]``

Prints one JSON record per command.  Exit status is 0 when every command
succeeds and every check passes, 1 when a check fails or a command errors,
and 2 when the input does not parse or a definition does not validate.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import EngineError
from .frontend import Session


def render(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def run(path: str, cmds: list[str], depth: int) -> Session:
    session = Session(depth=depth)
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        session.load(text)
        for cmd in cmds:
            session.load(cmd)
    except EngineError:
        pass
    return session


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="engine", description="Run ornament session files.")
    sub = parser.add_subparsers(dest="action", required=True)
    run_p = sub.add_parser("run", help="evaluate a session file ('-' reads standard input)")
    run_p.add_argument("file")
    run_p.add_argument("--cmd", action="append", default=[], metavar="FORM", help="extra command, run after the file")
    run_p.add_argument("--depth", type=int, default=4, help="default tree depth for enumerating commands")
    run_p.add_argument("--out", metavar="PATH", help="write records here instead of standard output")
    args = parser.parse_args(argv)

    try:
        session = run(args.file, args.cmd, args.depth)
    except OSError as err:
        print(f"engine: {err}", file=sys.stderr)
        return 2
    output = "".join(render(r) + "\n" for r in session.records)
    if args.out:
        Path(args.out).write_text(output)
    else:
        sys.stdout.write(output)
    return session.exit_code


if __name__ == "__main__":
    sys.exit(main())
