"""Input language: ring declarations, named ideals/modules and commands.

::

    ring Q[x0..x3];
    ideal I = (x0^2, x0*x1);
    module M <0,1> = ([x0, x1], [x1^2, 0]);
    invariants I
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Element, NonHomogeneousError, Ring, parse_field
from .groebner import Submodule

COMMANDS = ("invariants", "gin", "hilbert", "resolve", "cohomology", "family", "verify")
NAMED_COMMANDS = ("invariants", "gin", "hilbert", "resolve", "cohomology")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, column {col}: {msg}" if line else msg)
        self.line = line
        self.col = col


@dataclass
class Token:
    kind: str  # name, int, str, flag, op, sep, end
    text: str
    line: int
    col: int


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<flag>--[A-Za-z][\w-]*)
  | (?P<str>"[^"\n]*")
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<range>\.\.)
  | (?P<op>[\[\]()<>=,;^*+\-/])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    out = []
    line, start = 1, 0
    pos = 0
    depth = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        pos = m.end()
        if kind == "ws":
            continue
        if kind == "nl":
            # newlines end a statement only outside brackets
            if depth == 0:
                out.append(Token("sep", "\n", line, col))
            line, start = line + 1, pos
            continue
        if kind == "op" and tok in "([":
            depth += 1
        elif kind == "op" and tok in ")]":
            depth = max(depth - 1, 0)
        if kind == "op" and tok == ";":
            kind = "sep"
        out.append(Token(kind, tok, line, col))
    out.append(Token("end", "", line, pos - start + 1))
    return out


@dataclass
class Command:
    name: str
    target: str | None = None
    flags: dict[str, str] = field(default_factory=dict)
    line: int = 0


@dataclass
class InputProgram:
    ring: Ring | None
    names: dict[str, Submodule]
    commands: list[Command]
    sources: dict[str, str] = field(default_factory=dict)


class _Parser:
    def __init__(self, text: str, field_override=None):
        self.toks = tokenize(text)
        self.i = 0
        self.ring: Ring | None = None
        self.var_index: dict[str, int] = {}
        self.names: dict[str, Submodule] = {}
        self.sources: dict[str, str] = {}
        self.commands: list[Command] = []
        self.field_override = field_override
        self.text = text

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def next(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("op", "range", "sep") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not (self.tok.kind in ("op", "range", "sep") and self.tok.text == text):
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.next()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            self.error(f"expected {what}, found {self.tok.text or 'end of input'!r}")
        return self.next()

    # -- statements ----------------------------------------------------------

    def parse(self) -> InputProgram:
        while self.tok.kind != "end":
            if self.tok.kind == "sep":
                self.next()
                continue
            self.statement()
            if self.tok.kind not in ("sep", "end"):
                self.error(f"unexpected {self.tok.text!r} after statement")
        return InputProgram(self.ring, self.names, self.commands, self.sources)

    def statement(self):
        t = self.tok
        if t.kind != "name":
            self.error(f"expected a statement, found {t.text!r}")
        if t.text == "ring":
            self.ring_decl()
        elif t.text in ("ideal", "module"):
            self.definition()
        elif t.text in COMMANDS:
            self.command()
        else:
            self.error(f"unknown statement {t.text!r}")

    def ring_decl(self):
        self.next()
        ft = self.tok
        tag = self.expect_kind("name", "a field (Q or Fp(p))").text
        if tag in ("Fp", "GF"):
            self.expect("(")
            p = self.expect_kind("int", "a prime").text
            self.expect(")")
            tag = f"Fp({p})"
        try:
            field_ = parse_field(tag)
        except ValueError as exc:
            self.error(str(exc), ft)
        if self.field_override is not None:
            field_ = self.field_override
        self.expect("[")
        names = self.variables()
        self.expect("]")
        self.ring = Ring(len(names), field_)
        self.var_index = {v: k for k, v in enumerate(names)}

    def variables(self) -> list[str]:
        first = self.expect_kind("name", "a variable")
        if self.accept(".."):
            last = self.expect_kind("name", "a variable")
            a = re.fullmatch(r"([A-Za-z_]+)(\d+)", first.text)
            b = re.fullmatch(r"([A-Za-z_]+)(\d+)", last.text)
            if not a or not b or a.group(1) != b.group(1) or int(a.group(2)) != 0 or int(b.group(2)) < 0:
                self.error("variable range must look like x0..xN", first)
            return [f"{a.group(1)}{k}" for k in range(int(b.group(2)) + 1)]
        names = [first.text]
        while self.accept(","):
            names.append(self.expect_kind("name", "a variable").text)
        if len(set(names)) != len(names):
            self.error("repeated variable name", first)
        return names

    def definition(self):
        kw = self.next()
        if self.ring is None:
            self.error("declare a ring first", kw)
        name_tok = self.expect_kind("name", "a name")
        if name_tok.text in self.var_index:
            self.error(f"{name_tok.text!r} is a variable", name_tok)
        twists = None
        if kw.text == "module" and self.accept("<"):
            twists = [self.integer()]
            while self.accept(","):
                twists.append(self.integer())
            self.expect(">")
        self.expect("=")
        start = self.tok
        self.expect("(")
        items = []
        if not self.accept(")"):
            items.append(self.generator(kw.text == "module"))
            while self.accept(","):
                items.append(self.generator(kw.text == "module"))
            self.expect(")")
        end = self.toks[self.i - 1]
        ring = self.ring
        if kw.text == "ideal":
            rank = 1
            twists = [0]
        else:
            ranks = {len(v) for v, _ in items}
            if twists is None:
                rank = ranks.pop() if len(ranks) == 1 else 1
                twists = [0] * rank
            rank = len(twists)
            for v, tok in items:
                if len(v) != rank:
                    self.error(f"vector of length {len(v)} in a module of rank {rank}", tok)
        F = ring.free(tuple(twists))
        gens = []
        for v, tok in items:
            terms: dict = {}
            for comp, poly in enumerate(v):
                for e, c in poly.items():
                    terms[F.pack(comp, ring.pack(e))] = c
            el = Element(F, {P: ring.field(c) for P, c in terms.items() if ring.field(c) != 0})
            if el.terms and not el.is_homogeneous():
                self.error("nonhomogeneous generator", tok)
            gens.append(el)
        try:
            self.names[name_tok.text] = Submodule(F, gens)
        except NonHomogeneousError as exc:
            self.error(f"nonhomogeneous generator: {exc}", start)
        self.sources[name_tok.text] = self.text_between(kw, end)

    def text_between(self, a: Token, b: Token) -> str:
        lines = self.text.split("\n")
        if a.line == b.line:
            return lines[a.line - 1][a.col - 1 : b.col]
        parts = [lines[a.line - 1][a.col - 1 :]] + lines[a.line : b.line - 1] + [lines[b.line - 1][: b.col]]
        return " ".join(p.strip() for p in parts)

    def integer(self) -> int:
        neg = self.accept("-")
        v = int(self.expect_kind("int", "an integer").text)
        return -v if neg else v

    def generator(self, vector: bool):
        tok = self.tok
        if vector and self.accept("["):
            v = [self.expr()]
            while self.accept(","):
                v.append(self.expr())
            self.expect("]")
            return v, tok
        return [self.expr()], tok

    # -- polynomials as {exponent tuple: Fraction} ---------------------------

    def expr(self) -> dict:
        out: dict = {}
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        _add_into(out, self.term(), sign)
        while True:
            if self.accept("+"):
                _add_into(out, self.term(), 1)
            elif self.accept("-"):
                _add_into(out, self.term(), -1)
            else:
                return out

    def term(self) -> dict:
        val = self.power()
        while self.accept("*"):
            val = _mul(val, self.power())
        return val

    def power(self) -> dict:
        base = self.atom()
        if self.accept("^"):
            k = int(self.expect_kind("int", "an exponent").text)
            out = {tuple([0] * len(self.var_index)): Fraction(1)}
            for _ in range(k):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> dict:
        t = self.tok
        n = len(self.var_index)
        if t.kind == "int":
            self.next()
            c = Fraction(int(t.text))
            if self.accept("/"):
                d = int(self.expect_kind("int", "a denominator").text)
                if d == 0:
                    self.error("zero denominator", t)
                c /= d
            return {tuple([0] * n): c} if c else {}
        if t.kind == "name":
            if t.text not in self.var_index:
                self.error(f"unknown variable {t.text!r}", t)
            self.next()
            e = [0] * n
            e[self.var_index[t.text]] = 1
            return {tuple(e): Fraction(1)}
        if self.accept("("):
            v = self.expr()
            self.expect(")")
            return v
        self.error(f"expected a polynomial, found {t.text or 'end of input'!r}")

    # -- commands ------------------------------------------------------------

    def command(self):
        t = self.next()
        cmd = Command(t.text, line=t.line)
        if t.text in NAMED_COMMANDS:
            nt = self.expect_kind("name", "a name")
            if nt.text not in self.names:
                self.error(f"unknown name {nt.text!r}", nt)
            cmd.target = nt.text
        while self.tok.kind == "flag":
            ft = self.next()
            key = ft.text[2:]
            vals = []
            while self.tok.kind not in ("flag", "sep", "end"):
                v = self.next()
                vals.append(v.text[1:-1] if v.kind == "str" else v.text)
            cmd.flags[key] = "".join(vals)
        self.commands.append(cmd)


def _add_into(out: dict, other: dict, sign: int):
    for e, c in other.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def parse_input(text: str, field_override=None) -> InputProgram:
    return _Parser(text, field_override).parse()


def parse_polynomial(ring: Ring, text: str) -> Element:
    """A single homogeneous or inhomogeneous polynomial in ``x0..x{n-1}``."""
    p = _Parser(text)
    p.ring = ring
    p.var_index = {f"x{k}": k for k in range(ring.nvars)}
    while p.tok.kind == "sep":
        p.next()
    poly = p.expr()
    if p.tok.kind not in ("end", "sep"):
        p.error(f"unexpected {p.tok.text!r}")
    return ring.poly({e: c for e, c in poly.items()})
