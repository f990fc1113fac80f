"""Catalogs of all groups of a given small order, up to isomorphism."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .extensions import cyclic_extensions
from .group import (FiniteGroup, GroupError, alternating, cyclic, dicyclic, dihedral, direct_product,
                    matrix_group, semidirect, semidirect_cyclic, symmetric, trivial_group)
from .iso import automorphisms, fingerprint, is_isomorphic
from .presentations import PresentationSpec, group_from_presentation

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

MAX_CATALOG_ORDER = 24


@dataclass
class GroupCatalog:
    order: int
    groups: list[FiniteGroup]
    complete: bool
    method: str = "constructions"

    def __len__(self) -> int:
        return len(self.groups)

    def __iter__(self):
        return iter(self.groups)

    def names(self) -> list[str]:
        return [G.label or f"G{self.order}_{i}" for i, G in enumerate(self.groups)]

    def find(self, G) -> int | None:
        """Index of the member isomorphic to G."""
        for i, H in enumerate(self.groups):
            if is_isomorphic(G, H) is not None:
                return i
        return None


@lru_cache(maxsize=None)
def _catalog_data() -> dict:
    raw = resources.files("fgdesc.data").joinpath("catalog.toml").read_text()
    return tomllib.loads(raw)


def expected_count(n: int) -> int:
    return int(_catalog_data()["counts"][str(n)])


# ---------------------------------------------------------------------------
# construction expressions, e.g. "C(2) x D(3)", "SDC(8,2,3)", "PRES(a,b; a^4, b^2, [a,b])"


def _split_product(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    i = 0
    while i < len(text):
        ch = text[i]
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and text.startswith(" x ", i):
            parts.append(cur)
            cur = ""
            i += 3
            continue
        cur += ch
        i += 1
    parts.append(cur)
    return [p.strip() for p in parts]


def _inversion_action(A: FiniteGroup):
    return [tuple(range(A.order)), tuple(A.inv(a) for a in range(A.order))]


def build_construction(text: str) -> FiniteGroup:
    parts = _split_product(text.strip())
    if len(parts) > 1:
        G = build_construction(parts[0])
        for p in parts[1:]:
            G = direct_product(G, build_construction(p))
        G.label = text.strip()
        return G
    m = re.fullmatch(r"(\w+)\((.*)\)", parts[0], re.S)
    if not m:
        raise GroupError(f"bad construction {text!r}")
    name, args = m.group(1), m.group(2)
    ints = [int(x) for x in args.split(",")] if re.fullmatch(r"[\d,\s]*\d", args) else None
    if name == "C":
        G = cyclic(ints[0]) if ints[0] > 1 else trivial_group()
    elif name == "D":
        G = dihedral(ints[0])
    elif name == "Dic":
        G = dicyclic(ints[0])
    elif name == "S":
        G = symmetric(ints[0])
    elif name == "A":
        G = alternating(ints[0])
    elif name == "SDC":
        G = semidirect_cyclic(*ints)
    elif name == "SL":
        n, p = ints
        if n != 2:
            raise GroupError("only SL(2,p) is supported")
        G = matrix_group([[[1, 1], [0, 1]], [[0, p - 1], [1, 0]]], p)
    elif name == "PSL":
        n, p = ints
        G = matrix_group([[[1, 1], [0, 1]], [[0, p - 1], [1, 0]]], p, projective=True)
    elif name == "DIH":
        A = build_construction(args)
        if not A.is_abelian():
            raise GroupError("generalized dihedral needs an abelian group")
        G = semidirect(A, cyclic(2), _inversion_action(A))
    elif name == "PRES":
        gens, _, rels = args.partition(";")
        pres = PresentationSpec.from_strings("pres", [g.strip() for g in gens.split(",")],
                                             [r.strip() for r in _split_relators(rels)])
        G = group_from_presentation(pres)
    else:
        raise GroupError(f"unknown construction {name!r}")
    G.label = text.strip()
    return G


def _split_relators(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [r for r in (s.strip() for s in out) if r]


# ---------------------------------------------------------------------------
# catalogs


def _curated(n: int) -> list[FiniteGroup]:
    entries = _catalog_data().get("groups", {}).get(str(n), [])
    out = []
    for entry in entries:
        G = build_construction(entry["construction"])
        if G.order != n:
            raise GroupError(f"construction {entry['construction']!r} has order {G.order}, not {n}")
        G.label = entry["name"]
        out.append(G)
    return out


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _add_new(found: list[FiniteGroup], G: FiniteGroup) -> bool:
    fp = fingerprint(G)
    for H in found:
        if fingerprint(H) == fp and is_isomorphic(G, H) is not None:
            return False
    found.append(G)
    return True


@lru_cache(maxsize=None)
def groups_by_extension(n: int) -> tuple[FiniteGroup, ...]:
    """Every group of order n that has a normal subgroup of prime index.

    Built as all extensions of groups of order n/p by C_p. Solvable groups
    always have such a subgroup, so this is complete for every order below 60.
    """
    if n == 1:
        return (trivial_group(),)
    found: list[FiniteGroup] = []
    for p in sorted(_prime_factors(n)):
        for N in groups_by_extension(n // p):
            inner = set()
            for x in range(N.order):
                xi = N.inv(x)
                inner.add(tuple(N.mul(N.mul(x, b), xi) for b in range(N.order)))
            seen_actions = set()
            for alpha in automorphisms(N):
                ap = tuple(range(N.order))
                for _ in range(p):
                    ap = tuple(alpha[x] for x in ap)
                if ap not in inner:
                    continue
                # actions differing by an inner automorphism give the same groups
                key = min(tuple(alpha[c[b]] for b in range(N.order)) for c in inner)
                if key in seen_actions:
                    continue
                seen_actions.add(key)
                for ext in cyclic_extensions(N, p, alpha):
                    _add_new(found, ext.E)
    return tuple(found)


@lru_cache(maxsize=None)
def enumerate_groups(n: int, max_order: int = MAX_CATALOG_ORDER) -> GroupCatalog:
    """Complete catalog of order n: curated constructions, with the extension
    closure filling any gap. Completeness is checked against the stored count."""
    if n < 1 or n > max_order:
        raise GroupError(f"catalog order must lie in 1..{max_order}")
    found: list[FiniteGroup] = []
    for G in _curated(n):
        if not _add_new(found, G):
            raise GroupError(f"curated group {G.label} of order {n} is a duplicate")
    method = "constructions"
    if len(found) < expected_count(n):
        for G in groups_by_extension(n):
            if _add_new(found, G):
                method = "constructions+extensions"
    complete = len(found) == expected_count(n)
    return GroupCatalog(n, found, complete, method)


def extra_constructions(n: int) -> list[FiniteGroup]:
    """Named groups beyond the catalog bound (incomplete lists, for examples)."""
    entries = _catalog_data().get("extra", {}).get(str(n), [])
    out = []
    for entry in entries:
        G = build_construction(entry["construction"])
        G.label = entry["name"]
        out.append(G)
    return out


def candidate_groups(n: int) -> GroupCatalog:
    """Catalog if n is within the bound; otherwise the incomplete extra list."""
    if n <= MAX_CATALOG_ORDER:
        return enumerate_groups(n)
    return GroupCatalog(n, extra_constructions(n), False, "extra")
