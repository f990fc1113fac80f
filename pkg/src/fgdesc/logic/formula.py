"""First-order terms and formulas.

Nodes are immutable. Any formula node may carry a shortcut tag recording
which builder produced it; tags never take part in equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Func:
    name: str
    args: tuple


Term = Union[Var, Const, Func]


# ---------------------------------------------------------------------------
# shortcut tags


@dataclass(frozen=True)
class Generation:
    """g lies in the subgroup generated by xs; exact on structures of size <= v."""
    g: object
    xs: tuple
    v: int


@dataclass(frozen=True)
class Power:
    """x^n = g under the binary operation ``op``."""
    n: int
    g: object
    x: object
    op: str = "mul"


@dataclass(frozen=True)
class PowerUpTo:
    """x^r = g for some 0 <= r < 2^log(n); r = 0 gives ``unit``."""
    n: int
    g: object
    x: object
    op: str = "mul"
    unit: str = "e"


@dataclass(frozen=True)
class SlpWitness:
    """An existential block whose variables are each defined by one SLP step."""
    steps: int = 0


@dataclass(frozen=True)
class Relativized:
    """``inner`` evaluated in <ambient>/<kernel>.

    ``constants`` maps the inner formula's free variables to terms of the
    outer formula naming coset representatives. ``ambient`` and ``kernel`` are
    tuples of terms generating the subgroups (an empty ambient is the whole
    structure); kernel = None means the
    centralizer of ``centralize`` inside the ambient group.
    """
    inner: object
    constants: tuple
    ambient: tuple
    kernel: tuple | None
    v: int
    centralize: tuple = ()


Tag = Union[Generation, Power, PowerUpTo, SlpWitness, Relativized]


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Eq:
    left: object
    right: object
    tag: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple
    tag: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Not:
    body: object
    tag: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class And:
    parts: tuple
    tag: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Or:
    parts: tuple
    tag: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Implies:
    left: object
    right: object
    tag: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Forall:
    var: str
    body: object
    tag: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Exists:
    var: str
    body: object
    tag: object = field(default=None, compare=False, repr=False)


Formula = Union[Eq, Rel, Not, And, Or, Implies, Forall, Exists]
QUANTIFIERS = (Forall, Exists)
TRUE = And(())
FALSE = Or(())


# ---------------------------------------------------------------------------
# construction helpers


def V(name: str) -> Var:
    return Var(name)


def conj(parts: Iterable, tag=None):
    parts = tuple(parts)
    if len(parts) == 1 and tag is None:
        return parts[0]
    return And(parts, tag=tag)


def disj(parts: Iterable, tag=None):
    parts = tuple(parts)
    if len(parts) == 1 and tag is None:
        return parts[0]
    return Or(parts, tag=tag)


def exists(names: Iterable[str], body, tag=None):
    names = list(names)
    for i, n in enumerate(reversed(names)):
        body = Exists(n, body, tag=tag if i == len(names) - 1 else None)
    return body


def forall(names: Iterable[str], body, tag=None):
    names = list(names)
    for i, n in enumerate(reversed(names)):
        body = Forall(n, body, tag=tag if i == len(names) - 1 else None)
    return body


def neq(a, b):
    return Not(Eq(a, b))


def with_tag(f, tag):
    return type(f)(*[getattr(f, k) for k in f.__dataclass_fields__ if k != "tag"], tag=tag)


# ---------------------------------------------------------------------------
# traversal


def term_vars(t) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Func):
        out = frozenset()
        for a in t.args:
            out |= term_vars(a)
        return out
    return frozenset()


_FREE_CACHE: dict[int, tuple[object, frozenset]] = {}


def free_vars(f) -> frozenset:
    """Free variables; cached by node identity (nodes are immutable)."""
    hit = _FREE_CACHE.get(id(f))
    if hit is not None and hit[0] is f:
        return hit[1]
    if isinstance(f, Eq):
        out = term_vars(f.left) | term_vars(f.right)
    elif isinstance(f, Rel):
        out = frozenset().union(*[term_vars(a) for a in f.args]) if f.args else frozenset()
    elif isinstance(f, Not):
        out = free_vars(f.body)
    elif isinstance(f, (And, Or)):
        out = frozenset().union(*[free_vars(p) for p in f.parts]) if f.parts else frozenset()
    elif isinstance(f, Implies):
        out = free_vars(f.left) | free_vars(f.right)
    elif isinstance(f, QUANTIFIERS):
        out = free_vars(f.body) - {f.var}
    else:
        raise TypeError(f"not a formula: {f!r}")
    if len(_FREE_CACHE) > 2_000_000:
        _FREE_CACHE.clear()
    _FREE_CACHE[id(f)] = (f, out)
    return out


def subst_term(t, mapping: dict):
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Func):
        return Func(t.name, tuple(subst_term(a, mapping) for a in t.args))
    return t


def substitute(f, mapping: dict):
    """Capture-avoiding only in the sense that bound names shadow the mapping.

    Builders use fresh names, so substituted terms never contain bound names.
    """
    if not mapping:
        return f
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, mapping), subst_term(f.right, mapping), tag=_subst_tag(f.tag, mapping))
    if isinstance(f, Rel):
        return Rel(f.name, tuple(subst_term(a, mapping) for a in f.args), tag=_subst_tag(f.tag, mapping))
    if isinstance(f, Not):
        return Not(substitute(f.body, mapping), tag=_subst_tag(f.tag, mapping))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(substitute(p, mapping) for p in f.parts), tag=_subst_tag(f.tag, mapping))
    if isinstance(f, Implies):
        return Implies(substitute(f.left, mapping), substitute(f.right, mapping), tag=_subst_tag(f.tag, mapping))
    if isinstance(f, QUANTIFIERS):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        return type(f)(f.var, substitute(f.body, inner), tag=_subst_tag(f.tag, inner))
    raise TypeError(f"not a formula: {f!r}")


def _subst_tag(tag, mapping):
    if tag is None or not mapping:
        return tag
    if isinstance(tag, Generation):
        return Generation(subst_term(tag.g, mapping), tuple(subst_term(x, mapping) for x in tag.xs), tag.v)
    if isinstance(tag, Power):
        return Power(tag.n, subst_term(tag.g, mapping), subst_term(tag.x, mapping), tag.op)
    if isinstance(tag, PowerUpTo):
        return PowerUpTo(tag.n, subst_term(tag.g, mapping), subst_term(tag.x, mapping), tag.op, tag.unit)
    if isinstance(tag, Relativized):
        return Relativized(tag.inner, tuple((k, subst_term(t, mapping)) for k, t in tag.constants),
                           tuple(subst_term(t, mapping) for t in tag.ambient),
                           None if tag.kernel is None else tuple(subst_term(t, mapping) for t in tag.kernel),
                           tag.v, tuple(subst_term(t, mapping) for t in tag.centralize))
    return tag


def children(f) -> tuple:
    if isinstance(f, (Eq, Rel)):
        return ()
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, (And, Or)):
        return f.parts
    if isinstance(f, Implies):
        return (f.left, f.right)
    return (f.body,)


def iter_nodes(f):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def strip_tags(f):
    if isinstance(f, Eq):
        return Eq(f.left, f.right)
    if isinstance(f, Rel):
        return Rel(f.name, f.args)
    if isinstance(f, Not):
        return Not(strip_tags(f.body))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(strip_tags(p) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(strip_tags(f.left), strip_tags(f.right))
    return type(f)(f.var, strip_tags(f.body))


class NameSupply:
    """Fresh variable names prefix1, prefix2, ... with the least unused index."""

    def __init__(self, taken: Iterable[str] = ()):
        self.taken = set(taken)
        self.counters: dict[str, int] = {}

    def fresh(self, prefix: str = "x") -> str:
        i = self.counters.get(prefix, 1)
        while f"{prefix}{i}" in self.taken:
            i += 1
        name = f"{prefix}{i}"
        self.taken.add(name)
        self.counters[prefix] = i + 1
        return name

    def many(self, k: int, prefix: str = "x") -> list[str]:
        return [self.fresh(prefix) for _ in range(k)]
