"""Length and quantifier-alternation metrics."""
from __future__ import annotations

from dataclasses import dataclass

from .formula import And, Const, Eq, Exists, Forall, Implies, Not, Or, Rel, Var


@dataclass(frozen=True)
class LengthReport:
    symbol_length: int
    binary_length: int
    alternation: tuple[str, int]

    def as_dict(self) -> dict:
        return {"symbol_length": self.symbol_length, "binary_length": self.binary_length,
                "alternation": f"{self.alternation[0]}{self.alternation[1]}"}


def _term_len(t, occ: list[str]) -> int:
    if isinstance(t, Var):
        occ.append(t.name)
        return 1
    if isinstance(t, Const):
        return 1
    return 1 + sum(_term_len(a, occ) for a in t.args)


def _walk(f, occ: list[str]) -> int:
    total = 0
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Eq):
            total += 1 + _term_len(g.left, occ) + _term_len(g.right, occ)
        elif isinstance(g, Rel):
            total += 1 + sum(_term_len(a, occ) for a in g.args)
        elif isinstance(g, Not):
            total += 1
            stack.append(g.body)
        elif isinstance(g, (And, Or)):
            total += max(len(g.parts) - 1, 0) if g.parts else 1
            stack.extend(reversed(g.parts))
        elif isinstance(g, Implies):
            total += 1
            stack.extend([g.right, g.left])
        else:
            total += 2
            occ.append(g.var)
            stack.append(g.body)
    return total


def symbol_length(f) -> int:
    return _walk(f, [])


def _ceil_log10(i: int) -> int:
    """ceil(log10(i)) in integers: 0 for i = 1, 1 for 2..10, 2 for 11..100."""
    return len(str(i - 1)) if i > 1 else 0


def binary_length(f) -> int:
    """Symbol length plus ceil(log10 i) for each occurrence of the i-th variable.

    Variables are numbered by first occurrence in a left-to-right walk, so the
    value does not depend on the names chosen.
    """
    occ: list[str] = []
    base = _walk(f, occ)
    index: dict[str, int] = {}
    extra = 0
    for name in occ:
        i = index.setdefault(name, len(index) + 1)
        extra += _ceil_log10(i)
    return base + extra


def _prefix(f, positive: bool = True) -> list[str]:
    """Quantifier block kinds ('E'/'A') of a prenex form of f, outermost first."""
    if isinstance(f, (Eq, Rel)):
        return []
    if isinstance(f, Not):
        return _prefix(f.body, not positive)
    if isinstance(f, (And, Or)):
        return _merge([_prefix(p, positive) for p in f.parts])
    if isinstance(f, Implies):
        return _merge([_prefix(f.left, not positive), _prefix(f.right, positive)])
    kinds = []
    while isinstance(f, (Forall, Exists)):
        kinds.append("E" if isinstance(f, Exists) == positive else "A")
        f = f.body
    out = _prefix(f, positive)
    for kind in reversed(kinds):
        if not out or out[0] != kind:
            out = [kind] + out
    return out


def _merge(prefixes: list[list[str]]) -> list[str]:
    """Left-to-right extraction: take the kind of the leftmost pending quantifier
    and pull the next block of that kind from every subformula offering one."""
    pending = [list(p) for p in prefixes if p]
    out: list[str] = []
    while pending:
        kind = pending[0][0]
        for p in pending:
            if p[0] == kind:
                p.pop(0)
        pending = [p for p in pending if p]
        out.append(kind)
    return out


def alternation(f) -> tuple[str, int]:
    """('Σ', r) or ('Π', r): number of quantifier blocks of the prenex form."""
    blocks = _prefix(f)
    if not blocks:
        return ("Σ", 0)
    return ("Σ" if blocks[0] == "E" else "Π", len(blocks))


def length_report(f) -> LengthReport:
    return LengthReport(symbol_length(f), binary_length(f), alternation(f))


def count_nodes(f) -> int:
    n = 0
    stack = [f]
    while stack:
        g = stack.pop()
        n += 1
        if isinstance(g, Not):
            stack.append(g.body)
        elif isinstance(g, (And, Or)):
            stack.extend(g.parts)
        elif isinstance(g, Implies):
            stack.extend([g.left, g.right])
        elif isinstance(g, (Forall, Exists)):
            stack.append(g.body)
    return n

