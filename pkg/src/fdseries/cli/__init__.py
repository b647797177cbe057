"""Command-line interface: fdseries COMMAND [operands] [flags].

Exit codes: 0 success, 1 parse error, 2 precondition violated,
3 verification failure, 4 unsupported.
"""

import argparse
import json
import sys

from ..errors import FDSeriesError, ParseError
from .commands import HANDLERS, _Failed
from .syntax import Session, parse_expr, tokenize


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"{self.prog}: {message}")


def _add_common(p):
    p.add_argument("--script", help="declarations to replay first (file, or - for stdin)")
    p.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    p.add_argument("--text", dest="fmt", action="store_const", const="text", help="key: value output")


def build_parser():
    ap = _ArgumentParser(prog="fdseries", description="Fractional-derivatives series for LPDOs")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def cmd(name, help_, expr=True):
        p = sub.add_parser(name, help=help_)
        if expr:
            p.add_argument("expr", nargs="?", help="operator expression (read from stdin when omitted)")
        _add_common(p)
        return p

    cmd("symbol", "principal symbol")
    cmd("factors-of-symbol", "linear factors of the symbol")
    p = cmd("mult", "multiplicity of a direction in the symbol")
    p.add_argument("--factor", required=True, help="direction '(a1, a2)'")
    p = cmd("expand", "expand T(h G^(s0)) for a given G-symbol")
    p.add_argument("--h", required=True)
    p.add_argument("--s0", default="0")
    p.add_argument("--f", required=True, help="f_1;f_2;... as element texts")
    p.add_argument("--s", default="", help="s_2;s_3;... as rationals")
    p = cmd("polygon", "Newton polygons along a branch")
    p.add_argument("--factor", required=True)
    p.add_argument("--level", type=int)
    p.add_argument("--branch", help="edge indices per level, e.g. '0,1'")
    p = cmd("series", "construct a truncated series solution")
    p.add_argument("--factor", required=True)
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--depth", type=int)
    p.add_argument("--branch")
    p = sub.add_parser("verify", help="re-verify a series file")
    p.add_argument("file")
    p.add_argument("--depth", type=int)
    p.add_argument("--operator")
    _add_common(p)
    for name, help_ in (("disc2", "discriminant of a second-order operator"),
                        ("factor", "factorization for order <= 3"),
                        ("rfactor", "right first-order factors"),
                        ("lfactor", "left first-order factors")):
        p = cmd(name, help_)
        p.add_argument("--bounds", help="ansatz degrees 'num,den'")
    p = cmd("intersect", "intersection of <d_x + a d_y + b> ideals", expr=False)
    p.add_argument("pairs", nargs="+", help="'(a, b)' pairs")
    p = cmd("gcd", "generator of a left ideal in the localized ring", expr=False)
    p.add_argument("exprs", nargs="+")
    p.add_argument("--bezout", action="store_true", help="also return the combination")
    p = cmd("reconstruct", "reconstruct a power-series solution of a separable operator")
    p.add_argument("--solution", required=True)
    p.add_argument("--center", default="(0, 0)")
    p.add_argument("--N", type=int, default=8)
    p = cmd("corpus", "seeded random operators", expr=False)
    p.add_argument("--kind", default="factor", choices=["factor", "newton", "random"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p = sub.add_parser("run", help="run a session script with command lines")
    p.add_argument("file", help="script file, or - for stdin")
    _add_common(p)
    p = sub.add_parser("parse", help="parse an expression and print its canonical form")
    p.add_argument("expr", nargs="?")
    _add_common(p)
    return ap


def _read(path, stdin):
    if path == "-":
        return stdin.read()
    with open(path) as fh:
        return fh.read()


def _dispatch(session, args, stdin):
    if args.command == "parse":
        text = args.expr if args.expr is not None else stdin.read().strip()
        T = session.operator(text)
        return {"input": text, "canonical": str(T), "order": T.order}
    if hasattr(args, "expr") and args.command not in ("parse",) and args.expr is None:
        args.expr = stdin.read().strip()
        if not args.expr:
            raise ParseError("no operator given")
    return HANDLERS[args.command](session, args)


def _format(doc, fmt):
    if fmt == "text":
        lines = []

        def walk(prefix, v):
            if isinstance(v, dict):
                for k, w in v.items():
                    walk(f"{prefix}.{k}" if prefix else str(k), w)
            elif isinstance(v, list) and any(isinstance(w, (dict, list)) for w in v):
                for i, w in enumerate(v):
                    walk(f"{prefix}[{i}]", w)
            else:
                lines.append(f"{prefix}: {v}")

        walk("", doc)
        return "\n".join(lines)
    return json.dumps(doc, indent=2)


def _run_script(session, text, parser, stdin):
    results = []
    for lineno, words in session.run_script_lines(text):
        args = parser.parse_args(words)
        if args.command in ("run", "verify") or getattr(args, "script", None):
            raise ParseError(f"command {args.command!r} is not allowed inside a script", f"{lineno}:1")
        doc = _dispatch(session, args, stdin)
        results.append({"line": lineno, "command": words[0], "result": doc})
    return {"results": results}


def main(argv=None, stdin=None, stdout=None, stderr=None):
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    fmt = "json"
    try:
        args = parser.parse_args(argv)
        fmt = args.fmt or "json"
        session = Session()
        if args.command == "run":
            doc = _run_script(session, _read(args.file, stdin), parser, stdin)
        else:
            if args.script:
                for k, line in enumerate(_read(args.script, stdin).splitlines(), 1):
                    if session.declare(line, k) is not None:
                        raise ParseError(f"command lines are only allowed with 'run'", f"{k}:1")
            doc = _dispatch(session, args, stdin)
        print(_format(doc, fmt), file=stdout)
        return 0
    except _Failed as e:
        print(_format(e.doc, fmt), file=stdout)
        print(f"error: {e.error}", file=stderr)
        return e.error.exit_code
    except FDSeriesError as e:
        print(f"error: {e}", file=stderr)
        return e.exit_code
    except RecursionError:
        print("error: expression nested too deeply", file=stderr)
        return 1


__all__ = ["Session", "build_parser", "main", "parse_expr", "tokenize"]
