"""Group presentations: word parsing, the shipped catalog and coset enumeration."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .group import GroupError, closure

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

Word = tuple[int, ...]  # generator i is i+1, its inverse -(i+1)


class PresentationError(ValueError):
    pass


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>-?\d+)|(?P<sym>[()\[\],*^]))")


class _WordParser:
    def __init__(self, text: str, gens: Sequence[str]):
        self.text = text
        self.gens = {g: i + 1 for i, g in enumerate(gens)}
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise PresentationError(f"bad character at offset {pos} in {self.text!r}")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self, sym=None):
        tok = self.peek()
        if sym is not None and tok[1] != sym:
            raise PresentationError(f"expected {sym!r} at offset {tok[2]} in {self.text!r}")
        self.i += 1
        return tok

    def word(self) -> list[int]:
        out = self.factor()
        while True:
            kind, val, _ = self.peek()
            if val == "*":
                self.take()
                out += self.factor()
            elif kind == "name" or val in ("(", "["):
                out += self.factor()
            else:
                return out

    def factor(self) -> list[int]:
        kind, val, pos = self.take()
        if kind == "name":
            if val not in self.gens:
                raise PresentationError(f"unknown generator {val!r} in {self.text!r}")
            base = [self.gens[val]]
        elif kind == "int" and val == "1":
            base = []
        elif val == "(":
            base = self.word()
            self.take(")")
        elif val == "[":
            u = self.word()
            self.take(",")
            v = self.word()
            self.take("]")
            base = list(invert_word(u)) + list(invert_word(v)) + u + v
        else:
            raise PresentationError(f"unexpected {val!r} at offset {pos} in {self.text!r}")
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise PresentationError(f"expected exponent at offset {pos} in {self.text!r}")
            e = int(val)
            base = base * e if e >= 0 else list(invert_word(base)) * (-e)
        return base


def parse_word(text: str, gens: Sequence[str]) -> Word:
    p = _WordParser(text, gens)
    w = p.word() if p.tokens else []
    if p.i != len(p.tokens):
        raise PresentationError(f"trailing input at offset {p.peek()[2]} in {text!r}")
    return free_reduce(w)


def format_word(word: Sequence[int], gens: Sequence[str]) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        g = gens[abs(word[i]) - 1]
        e = (j - i) * (1 if word[i] > 0 else -1)
        parts.append(g if e == 1 else f"{g}^{e}")
        i = j
    return "*".join(parts)


@dataclass(frozen=True)
class PresentationSpec:
    name: str
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    order: int | None = None
    source: str = ""
    simple: bool = False
    aliases: tuple[str, ...] = field(default=())

    @property
    def length(self) -> int:
        """Number of generators plus total relator length."""
        return len(self.generators) + sum(len(r) for r in self.relators)

    @classmethod
    def from_strings(cls, name, generators, relators, **kw) -> "PresentationSpec":
        gens = tuple(generators)
        rels = tuple(parse_word(r, gens) for r in relators)
        return cls(name=name, generators=gens, relators=rels, **kw)

    def relator_strings(self) -> list[str]:
        return [format_word(r, self.generators) for r in self.relators]


def eval_word(G, word: Sequence[int], images: Sequence[int]) -> int:
    x = G.identity
    for s in word:
        g = images[abs(s) - 1]
        x = G.mul(x, g if s > 0 else G.inv(g))
    return x


# ---------------------------------------------------------------------------
# catalog


@lru_cache(maxsize=None)
def presentation_catalog() -> tuple[PresentationSpec, ...]:
    raw = resources.files("fgdesc.data").joinpath("presentations.toml").read_text()
    data = tomllib.loads(raw)
    out = []
    for entry in data["presentation"]:
        out.append(PresentationSpec.from_strings(
            entry["name"], entry["generators"], entry["relators"],
            order=entry.get("order"), source=entry.get("source", ""),
            simple=entry.get("simple", False), aliases=tuple(entry.get("aliases", ()))))
    return tuple(out)


def lookup_presentation(name: str) -> PresentationSpec:
    for p in presentation_catalog():
        if p.name == name or name in p.aliases:
            return p
    fam = re.fullmatch(r"C(\d+)", name)
    if fam:
        return cyclic_presentation(int(fam.group(1)))
    fam = re.fullmatch(r"D(\d+)", name)
    if fam:
        return dihedral_presentation(int(fam.group(1)))
    fam = re.fullmatch(r"Dic(\d+)", name)
    if fam:
        return dicyclic_presentation(int(fam.group(1)))
    raise KeyError(name)


def simple_presentations(order: int) -> list[PresentationSpec]:
    return [p for p in presentation_catalog() if p.simple and p.order == order]


def catalog_generator_bound() -> int:
    """Largest generator count among the simple catalog entries."""
    return max(len(p.generators) for p in presentation_catalog() if p.simple)


def cyclic_presentation(n: int) -> PresentationSpec:
    return PresentationSpec(name=f"C{n}", generators=("a",), relators=((1,) * n,), order=n,
                            source="cyclic family", simple=_is_prime(n))


def dihedral_presentation(n: int) -> PresentationSpec:
    return PresentationSpec.from_strings(f"D{n}", ("r", "s"), (f"r^{n}", "s^2", "(r*s)^2"),
                                         order=2 * n, source="dihedral family")


def dicyclic_presentation(n: int) -> PresentationSpec:
    return PresentationSpec.from_strings(f"Dic{n}", ("a", "x"), (f"a^{2 * n}", f"a^{n}*x^-2", "x^-1*a*x*a"),
                                         order=4 * n, source="dicyclic family")


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


# ---------------------------------------------------------------------------
# finding generator images


def find_generator_images(G, pres: PresentationSpec, within: Sequence[int] | None = None,
                          modulo=None) -> tuple[int, ...] | None:
    """Least (index order) tuple of elements satisfying the relators and generating.

    ``modulo`` may be a projection dict onto a quotient; then G is the quotient.
    """
    pool = sorted(G.elements if within is None else within)
    k = len(pres.generators)
    target = len(pool)
    # relators grouped by the highest generator they mention
    by_last: dict[int, list[Word]] = {}
    power_of: dict[int, int] = {}
    for r in pres.relators:
        gens_used = {abs(x) for x in r}
        by_last.setdefault(max(gens_used, default=1) - 1, []).append(r)
        if len(gens_used) == 1:
            g = gens_used.pop() - 1
            power_of[g] = abs(sum(1 if x > 0 else -1 for x in r))
    orders = {g: G.element_order(g) for g in pool}

    def rec(i, imgs):
        if i == k:
            if closure(G, imgs).order == target:
                return tuple(imgs)
            return None
        for c in pool:
            if i in power_of and power_of[i] % orders[c]:
                continue
            if i == 0 and c == G.identity and target > 1:
                continue
            cand = imgs + [c]
            if all(eval_word(G, r, cand + [G.identity] * (k - i - 1)) == G.identity for r in by_last.get(i, ())):
                found = rec(i + 1, cand)
                if found is not None:
                    return found
        return None

    return rec(0, [])


# ---------------------------------------------------------------------------
# coset enumeration (HLT with coincidences)


def coset_enumerate(pres: PresentationSpec, max_cosets: int = 200000,
                    subgroup: Sequence[Word] = ()) -> list[list[int]]:
    """Complete coset table of the subgroup generated by ``subgroup`` words.

    Columns are g1, g1^-1, g2, g2^-1, ...
    """
    k = len(pres.generators)
    ncol = 2 * k

    def col(x):
        return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1

    def invcol(c):
        return c ^ 1

    rels = [tuple(col(x) for x in cyclic_reduce(r)) for r in pres.relators if r]
    table: list[list[int]] = [[-1] * ncol]
    parent = [0]  # union-find for coincidences; parent[i] == i means live

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def new_coset():
        if len(table) >= max_cosets:
            raise PresentationError(f"coset enumeration exceeded {max_cosets} cosets")
        table.append([-1] * ncol)
        parent.append(len(parent))
        return len(table) - 1

    def coincidence(a, b):
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if a > b:
                a, b = b, a
            parent[b] = a
            for c in range(ncol):
                d = table[b][c]
                if d < 0:
                    continue
                table[d][invcol(c)] = -1 if find(d) == b else table[d][invcol(c)]
                da = table[a][c]
                if da < 0:
                    table[a][c] = d
                    if table[find(d)][invcol(c)] < 0:
                        table[find(d)][invcol(c)] = a
                else:
                    queue.append((da, d))

    def scan_and_fill(c, rel):
        n = len(rel)
        while True:
            f, i = c, 0
            while i < n and table[f][rel[i]] >= 0:
                f = find(table[f][rel[i]])
                i += 1
            if i == n:
                if f != c:
                    coincidence(f, c)
                return
            b, j = c, n - 1
            while j >= i and table[b][invcol(rel[j])] >= 0:
                b = find(table[b][invcol(rel[j])])
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                table[f][rel[i]] = b
                table[b][invcol(rel[i])] = f
                return
            d = new_coset()
            table[f][rel[i]] = d
            table[d][invcol(rel[i])] = f

    for w in subgroup:
        w = tuple(col(x) for x in free_reduce(w))
        if w:
            scan_and_fill(find(0), w)
    c = 0
    while c < len(table):
        if find(c) == c:
            for rel in rels:
                if find(c) != c:
                    break
                scan_and_fill(c, rel)
            if find(c) == c:
                for x in range(ncol):
                    if table[c][x] < 0:
                        d = new_coset()
                        table[c][x] = d
                        table[d][invcol(x)] = c
        c += 1
    live = [i for i in range(len(table)) if find(i) == i]
    pos = {c: i for i, c in enumerate(live)}
    return [[pos[find(table[c][x])] for x in range(ncol)] for c in live]


def presented_order(pres: PresentationSpec, max_cosets: int = 200000) -> int:
    """Order of the presented group (finite case only)."""
    return len(coset_enumerate(pres, max_cosets))


def presented_order_bound(pres: PresentationSpec, max_cosets: int = 200000) -> int:
    """Upper bound on the presented order via a cyclic subgroup <g_i> with g_i^k a relator.

    The index of <g_i> times k bounds the order; enumeration over <g_i> needs far
    fewer cosets than over the trivial subgroup.
    """
    best = None
    for r in pres.relators:
        gens = {abs(x) for x in r}
        if len(gens) == 1 and len(r) == abs(sum(1 if x > 0 else -1 for x in r)):
            g = gens.pop()
            if best is None or len(r) > best[1]:
                best = (g, len(r))
    if best is None:
        return presented_order(pres, max_cosets)
    g, k = best
    return k * len(coset_enumerate(pres, max_cosets, subgroup=[(g,)]))


def verify_presents(G, pres: PresentationSpec, max_cosets: int = 200000) -> tuple[int, ...]:
    """Generator images showing that ``pres`` presents G; raises otherwise."""
    if pres.order is not None and pres.order != G.order:
        raise PresentationError(f"{pres.name} has order {pres.order}, group has {G.order}")
    images = find_generator_images(G, pres)
    if images is None:
        raise PresentationError(f"{pres.name}: no generating tuple satisfies the relators")
    # G is a quotient of the presented group, so a matching upper bound suffices
    if presented_order_bound(pres, max_cosets) != G.order:
        raise PresentationError(f"{pres.name} presents a group of the wrong order")
    return images


def group_from_presentation(pres: PresentationSpec, max_cosets: int = 200000):
    """Regular representation read off the coset table."""
    from .group import from_elements

    table = coset_enumerate(pres, max_cosets)
    n = len(table)
    gens = [tuple(table[c][2 * i] for c in range(n)) for i in range(len(pres.generators))]

    def mul(p, q):
        return tuple(q[x] for x in p)
    return from_elements(gens, mul, tuple(range(n)), label=pres.name)


__all__ = [
    "PresentationSpec", "PresentationError", "GroupError", "parse_word", "format_word", "free_reduce",
    "eval_word", "presentation_catalog", "lookup_presentation", "coset_enumerate", "verify_presents",
]
