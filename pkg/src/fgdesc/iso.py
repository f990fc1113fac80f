"""Isomorphism search by backtracking over generator images."""
from __future__ import annotations

from collections import Counter
from typing import Iterator, Mapping

from .group import closure, small_generating_set


def fingerprint(G) -> tuple:
    """Cheap isomorphism invariant: counts of (order, centralizer size, order of square)."""
    cached = getattr(G, "_fingerprint", None)
    if cached is not None:
        return cached
    n = G.order
    orders = [G.element_order(a) for a in range(n)]
    prof = Counter()
    for a in range(n):
        cent = sum(1 for b in range(n) if G.mul(a, b) == G.mul(b, a))
        prof[(orders[a], cent, orders[G.mul(a, a)])] += 1
    fp = (n, tuple(sorted(prof.items())))
    try:
        G._fingerprint = fp
    except AttributeError:
        pass
    return fp


def _generator_plan(G, fixed: Mapping[int, int]) -> list[int]:
    base = list(dict.fromkeys(fixed))
    gens = list(base)
    current = set(closure(G, gens).elements)
    if len(current) < G.order:
        for g in small_generating_set(G):
            if g not in current:
                gens.append(g)
                current = set(closure(G, gens).elements)
    # greedy set may contain redundant entries once the fixed base is in
    return gens


def _extend(G, H, gens, images, mapping, order_set):
    """Grow ``mapping`` over <gens[:len(images)]>; False on inconsistency."""
    frontier = list(mapping)
    while frontier:
        nxt = []
        for x in frontier:
            fx = mapping[x]
            for g, hg in zip(gens, images):
                y = G.mul(x, g)
                fy = H.mul(fx, hg)
                prev = mapping.get(y)
                if prev is None:
                    if fy in order_set:
                        return False
                    mapping[y] = fy
                    order_set.add(fy)
                    nxt.append(y)
                elif prev != fy:
                    return False
        frontier = nxt
    return True


def iter_isomorphisms(G, H, fixed: Mapping[int, int] | None = None) -> Iterator[dict[int, int]]:
    """Yield every isomorphism G -> H (as dicts) extending ``fixed``."""
    fixed = dict(fixed or {})
    if G.order != H.order:
        return
    gens = _generator_plan(G, fixed)
    h_by_order: dict[int, list[int]] = {}
    for b in range(H.order):
        h_by_order.setdefault(H.element_order(b), []).append(b)

    def rec(i, images, mapping, used):
        if i == len(gens):
            if len(mapping) == G.order and all(mapping[k] == v for k, v in fixed.items()):
                yield dict(mapping)
            return
        g = gens[i]
        if g in mapping:
            # already generated by earlier images (redundant generator)
            yield from rec(i + 1, images + [mapping[g]], mapping, used)
            return
        cands = [fixed[g]] if g in fixed else h_by_order.get(G.element_order(g), [])
        for c in cands:
            if H.element_order(c) != G.element_order(g):
                continue
            m2, u2 = dict(mapping), set(used)
            if _extend(G, H, gens[: i + 1], images + [c], m2, u2):
                yield from rec(i + 1, images + [c], m2, u2)

    e = {G.identity: H.identity}
    yield from rec(0, [], e, {H.identity})


def is_isomorphic(G, H, fixed: Mapping[int, int] | None = None) -> dict[int, int] | None:
    """An explicit isomorphism G -> H respecting ``fixed``, or None."""
    if G.order != H.order:
        return None
    if not fixed and fingerprint(G) != fingerprint(H):
        return None
    return next(iter_isomorphisms(G, H, fixed), None)


def automorphisms(G) -> list[tuple[int, ...]]:
    """All automorphisms of G as image tuples indexed by element."""
    out = []
    for m in iter_isomorphisms(G, G):
        out.append(tuple(m[a] for a in range(G.order)))
    out.sort()
    return out


def is_automorphism(G, perm) -> bool:
    perm = list(perm)
    if sorted(perm) != list(range(G.order)):
        return False
    return all(perm[G.mul(a, b)] == G.mul(perm[a], perm[b]) for a in range(G.order) for b in range(G.order))
