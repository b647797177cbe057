"""Parsing operator expressions and session scripts.

    script := decl* ; decl := adjoin | differential | free | jet | let | cmd
    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | factor
    factor := atom ('^' nat)?
    atom   := 'Dx' | 'Dy' | 'x' | 'y' | ident | number | '(' expr ')'

'*' is composition; '/' divides by an operator of order zero.
"""

import re
import shlex
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ParseError, PreconditionError
from ..dfield.tower import base_tower, split_jet_name
from ..dfield.upoly import UPoly
from ..lpdo.operator import LPDO

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z][A-Za-z0-9_]*)|(.))")


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int

    @property
    def where(self):
        return f"{self.line}:{self.col}"


def tokenize(text, line=1, col0=1):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(Token("num", m.group(1), line, col0 + start))
        elif m.group(2):
            toks.append(Token("name", m.group(2), line, col0 + start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^(),":
                raise ParseError(f"unexpected character {ch!r}", f"{line}:{col0 + start}")
            toks.append(Token("op", ch, line, col0 + start))
        pos = m.end()
    toks.append(Token("end", "", line, col0 + len(text)))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.take()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.where)
        return t

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take()
            node = ("mul" if op.text == "*" else "div", node, self.unary(), op.where)
        return node

    def unary(self):
        if self.peek().text == "-":
            self.take()
            return ("neg", self.unary())
        return self.factor()

    def factor(self):
        node = self.atom()
        if self.peek().text == "^":
            self.take()
            t = self.take()
            if t.kind != "num" or not t.text.isdigit():
                raise ParseError("exponent must be a natural number", t.where)
            node = ("pow", node, int(t.text))
        return node

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return ("num", Fraction(t.text))
        if t.kind == "name":
            return ("name", t.text, t.where)
        if t.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.where)


def parse_expr(text, line=1, col0=1):
    p = _Parser(tokenize(text, line, col0))
    node = p.expr()
    t = p.peek()
    if t.kind != "end":
        raise ParseError(f"unexpected {t.text!r}", t.where)
    return node


class Session:
    """Tower state and named operators built by replaying declarations."""

    def __init__(self):
        self.tower = base_tower()
        self.lets = {}
        self.commands = []

    # -- evaluation --------------------------------------------------------
    def _resolve(self, name, where, t):
        if name == "Dx":
            return LPDO.dx(t)
        if name == "Dy":
            return LPDO.dy(t)
        if name in self.lets:
            return self.lets[name].in_tower(t)
        if name in t.names():
            rec = t.universe.families.get(name)
            if rec is not None and rec.kind == "jets":
                return LPDO.scalar(t, t.jet(name))
            return LPDO.scalar(t, t.gen(name))
        parts = split_jet_name(name)
        if parts and parts[0] in t.names():
            return LPDO.scalar(t, t.jet(parts[0], parts[1], parts[2]))
        raise ParseError(f"unknown name {name!r}", where)

    def evaluate(self, node, t=None):
        t = t or self.tower
        kind = node[0]
        if kind == "num":
            return LPDO.scalar(t, node[1])
        if kind == "name":
            return self._resolve(node[1], node[2], t)
        if kind == "neg":
            return -self.evaluate(node[1], t)
        if kind == "pow":
            return self.evaluate(node[1], t) ** node[2]
        a, b = self.evaluate(node[1], t), self.evaluate(node[2], t)
        if kind == "add":
            return a + b
        if kind == "sub":
            return a - b
        if kind == "mul":
            return a * b
        if kind == "div":
            if not b.is_scalar():
                raise ParseError("division by an operator of positive order", node[3])
            c = b.scalar_value()
            if c.is_zero():
                raise ParseError("division by zero", node[3])
            return a * LPDO.scalar(b.tower, c.inverse())
        raise AssertionError(kind)

    def operator(self, text, line=1, col0=1):
        return self.evaluate(parse_expr(text, line, col0))

    def element(self, text, line=1, col0=1, t=None):
        op = self.evaluate(parse_expr(text, line, col0), t)
        if not op.is_scalar():
            raise ParseError("expected an element, found an operator", f"{line}:{col0}")
        return op.scalar_value()

    def polynomial(self, text, var, line=1, col0=1):
        """Univariate polynomial in `var` over the current tower."""
        t = self.tower

        def ev(node):
            kind = node[0]
            if kind == "num":
                return UPoly(t, [t.const(node[1])])
            if kind == "name":
                if node[1] == var:
                    return UPoly(t, [t.zero, t.one])
                return UPoly(t, [self._resolve(node[1], node[2], t).scalar_value()])
            if kind == "neg":
                return -ev(node[1])
            if kind == "pow":
                return ev(node[1]) ** node[2]
            a, b = ev(node[1]), ev(node[2])
            if kind == "add":
                return a + b
            if kind == "sub":
                return a - b
            if kind == "mul":
                return a * b
            if kind == "div":
                if b.degree != 0:
                    raise ParseError("division by a polynomial", node[3])
                return a * UPoly(t, [b.coeffs[0].inverse()])
            raise AssertionError(kind)

        return ev(parse_expr(text, line, col0))

    # -- declarations ------------------------------------------------------
    def declare(self, line, lineno=1):
        """Apply one declaration line; returns a command line (list of words) or None."""
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            return None
        word = stripped.split()[0]
        col = line.index(word) + 1
        rest = stripped[len(word):]
        rcol = col + len(word)
        try:
            if word == "adjoin":
                name, poly = _split_colon(rest, lineno, rcol)
                # the root is written as NAME, or as z when NAME does not occur
                var = name if re.search(rf"\b{name}\b", poly) else "z"
                p = self.polynomial(poly, var, lineno, rcol)
                self.tower, root = self.tower.adjoin_algebraic(name, p.coeffs)
                if name not in self.tower.names():
                    self.lets[name] = LPDO.scalar(self.tower, root)
            elif word == "differential":
                name, body = _split_colon(rest, lineno, rcol)
                parts = body.split(",")
                if len(parts) != 2:
                    raise ParseError("differential needs 'dx , dy'", f"{lineno}:{rcol}")
                dx = self.element(parts[0], lineno, rcol)
                dy = self.element(parts[1], lineno, rcol)
                self.tower, _ = self.tower.adjoin_differential(name, dx, dy)
            elif word == "free":
                self.tower, _ = self.tower.adjoin_jets(rest.strip())
            elif word == "jet":
                head, _, body = rest.partition("=")
                bits = head.split()
                if len(bits) != 3 or bits[1] not in ("x", "y") or not bits[2].isdigit():
                    raise ParseError("jet needs 'NAME x|y ORDER = expr'", f"{lineno}:{rcol}")
                name, orient, order = bits[0], bits[1], int(bits[2])
                self.tower, _ = self.tower.adjoin_jets(
                    name, order, orient, lambda t: self.element(body, lineno, rcol, t))
            elif word == "let":
                head, eq, body = rest.partition("=")
                name = head.strip()
                if not eq or not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
                    raise ParseError("let needs 'NAME = expr'", f"{lineno}:{rcol}")
                if name in ("Dx", "Dy", "x", "y"):
                    raise ParseError(f"cannot rebind {name}", f"{lineno}:{rcol}")
                self.lets[name] = self.operator(body, lineno, rcol + len(head) + 1)
            else:
                return shlex.split(stripped)
        except PreconditionError as e:
            if isinstance(e, ParseError):
                raise
            raise PreconditionError(f"line {lineno}: {e}")
        return None

    def run_script_lines(self, text):
        """Apply declarations in order, yielding (line number, words) for command lines."""
        for k, line in enumerate(text.splitlines(), 1):
            cmd = self.declare(line, k)
            if cmd is not None:
                yield k, cmd

    def replay(self, declarations):
        for k, line in enumerate(declarations, 1):
            if self.declare(line, k) is not None:
                raise ParseError(f"not a declaration: {line!r}", f"{k}:1")


def _split_colon(rest, lineno, col):
    name, colon, body = rest.partition(":")
    name = name.strip()
    if not colon or not name:
        raise ParseError("expected 'NAME : ...'", f"{lineno}:{col}")
    return name, body


def parse_pair(text):
    """'(a, b)' or 'a,b' as two expression texts."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    depth, cut = 0, None
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            if cut is not None:
                raise ParseError("expected two components", f"1:{i + 1}")
            cut = i
    if cut is None:
        raise ParseError("expected two components separated by ','", "1:1")
    return s[:cut].strip(), s[cut + 1:].strip()


def split_top(text, sep):
    """Split at separators outside parentheses."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur)
    return [s.strip() for s in out]
