"""S-expression text format for formulas.

    #sig group
    (forall x (exists y (= (mul x y) e)))

Connectives: not, and, or, implies, forall, exists, =. An empty (and) is
true and an empty (or) is false.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .formula import And, Const, Eq, Exists, Forall, Func, Implies, Not, Or, Rel, Var


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Signature:
    name: str
    functions: dict = field(default_factory=dict)
    constants: tuple = ()
    relations: dict = field(default_factory=dict)

    def arity(self, symbol: str) -> int | None:
        if symbol in self.functions:
            return self.functions[symbol]
        if symbol in self.relations:
            return self.relations[symbol]
        return None


_GROUP_F = {"mul": 2, "inv": 1}
SIGNATURES = {
    "group": Signature("group", dict(_GROUP_F), ("e",)),
    "monoid": Signature("monoid", {"mul": 2}, ("e",)),
    "ring": Signature("ring", {"add": 2, "mul": 2}, ("zero", "one")),
    "ring-sigma": Signature("ring-sigma", {"add": 2, "mul": 2, "sigma": 1}, ("zero", "one")),
    "group-pred": Signature("group-pred", dict(_GROUP_F), ("e",), {"P": 1}),
    "group-aut": Signature("group-aut", {**_GROUP_F, "aut": 1}, ("e",)),
}
KEYWORDS = {"not", "and", "or", "implies", "forall", "exists", "="}

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([A-Za-z_][A-Za-z0-9_']*|=))")


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        out.append((m.group(m.lastindex), start))
        pos = m.end()
    out.append((None, n))
    return out


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.toks = _tokenize(text)
        self.i = 0
        self.sig = sig

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, val):
        tok, pos = self.next()
        if tok != val:
            raise FormulaSyntaxError(f"expected {val!r}, found {tok or 'end of input'!r}", pos)

    def name(self, what: str) -> str:
        tok, pos = self.next()
        if tok is None or tok in "()" or tok in KEYWORDS:
            raise FormulaSyntaxError(f"expected {what}, found {tok or 'end of input'!r}", pos)
        return tok

    def formula(self):
        tok, pos = self.next()
        if tok != "(":
            raise FormulaSyntaxError(f"expected '(' to start a formula, found {tok or 'end of input'!r}", pos)
        head, hpos = self.next()
        if head == "=":
            a, b = self.term(), self.term()
            self.expect(")")
            return Eq(a, b)
        if head == "not":
            f = self.formula()
            self.expect(")")
            return Not(f)
        if head in ("and", "or"):
            parts = []
            while self.peek()[0] != ")":
                if self.peek()[0] is None:
                    raise FormulaSyntaxError("unclosed connective", self.peek()[1])
                parts.append(self.formula())
            self.next()
            return (And if head == "and" else Or)(tuple(parts))
        if head == "implies":
            a, b = self.formula(), self.formula()
            self.expect(")")
            return Implies(a, b)
        if head in ("forall", "exists"):
            v = self.name("a variable")
            if v in self.sig.constants or self.sig.arity(v) is not None:
                raise FormulaSyntaxError(f"cannot quantify over symbol {v!r}", self.toks[self.i - 1][1])
            body = self.formula()
            self.expect(")")
            return (Forall if head == "forall" else Exists)(v, body)
        if head is not None and head in self.sig.relations:
            args = tuple(self.term() for _ in range(self.sig.relations[head]))
            self.expect(")")
            return Rel(head, args)
        raise FormulaSyntaxError(f"unknown formula head {head or 'end of input'!r}", hpos)

    def term(self):
        tok, pos = self.next()
        if tok == "(":
            head, hpos = self.next()
            if head not in self.sig.functions:
                raise FormulaSyntaxError(f"unknown function symbol {head!r}", hpos)
            args = tuple(self.term() for _ in range(self.sig.functions[head]))
            self.expect(")")
            return Func(head, args)
        if tok is None or tok == ")" or tok in KEYWORDS:
            raise FormulaSyntaxError(f"expected a term, found {tok or 'end of input'!r}", pos)
        if tok in self.sig.constants:
            return Const(tok)
        if tok in self.sig.functions or tok in self.sig.relations:
            raise FormulaSyntaxError(f"symbol {tok!r} used without arguments", pos)
        return Var(tok)


def parse_with_signature(text: str, default: str = "group"):
    """Parse text with an optional '#sig name' header; returns (formula, signature)."""
    sig_name = default
    body_lines = []
    offset = 0
    body_start = None
    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        if body_start is None and stripped.startswith("#sig"):
            sig_name = stripped[4:].strip()
            offset += len(line)
            continue
        if body_start is None and (not stripped or stripped.startswith(";")):
            offset += len(line)
            continue
        if body_start is None:
            body_start = offset
        body_lines.append(line)
    if sig_name not in SIGNATURES:
        raise FormulaSyntaxError(f"unknown signature {sig_name!r}", 0)
    body = "".join(body_lines)
    try:
        p = _Parser(body, SIGNATURES[sig_name])
        f = p.formula()
        tok, pos = p.peek()
        if tok is not None:
            raise FormulaSyntaxError(f"trailing input {tok!r}", pos)
    except FormulaSyntaxError as exc:
        raise FormulaSyntaxError(str(exc).rsplit(" at offset", 1)[0], exc.offset + (body_start or 0)) from None
    return f, SIGNATURES[sig_name]


def parse(text: str, signature: str = "group"):
    return parse_with_signature(text, signature)[0]


def parse_term(text: str, signature: str = "group"):
    p = _Parser(text, SIGNATURES[signature])
    t = p.term()
    tok, pos = p.peek()
    if tok is not None:
        raise FormulaSyntaxError(f"trailing input {tok!r}", pos)
    return t


def render_term(t) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    return "(" + " ".join([t.name] + [render_term(a) for a in t.args]) + ")"


def render(f, signature: str | None = None) -> str:
    """Canonical single-line text; a '#sig' header line is added when asked."""
    out: list[str] = []
    _render(f, out)
    text = "".join(out)
    return f"#sig {signature}\n{text}" if signature else text


def _render(f, out: list[str]) -> None:
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, str):
            out.append(g)
        elif isinstance(g, Eq):
            out.append(f"(= {render_term(g.left)} {render_term(g.right)})")
        elif isinstance(g, Rel):
            out.append("(" + " ".join([g.name] + [render_term(a) for a in g.args]) + ")")
        elif isinstance(g, Not):
            out.append("(not ")
            stack.extend([")", g.body])
        elif isinstance(g, (And, Or)):
            out.append("(and" if isinstance(g, And) else "(or")
            items = []
            for p in g.parts:
                items.extend([" ", p])
            stack.append(")")
            stack.extend(reversed(items))
        elif isinstance(g, Implies):
            out.append("(implies ")
            stack.extend([")", g.right, " ", g.left])
        else:
            out.append(f"({'forall' if isinstance(g, Forall) else 'exists'} {g.var} ")
            stack.extend([")", g.body])
