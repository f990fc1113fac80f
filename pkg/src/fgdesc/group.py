"""Finite groups as dense multiplication tables, plus a few implicit families.

Elements are always the integers ``0 .. order-1``.  Dense groups keep the
full Cayley table; the implicit families (cyclic, elementary abelian 2-group,
dihedral) compute products arithmetically so that they scale to orders far
beyond what a table could hold.  Every group exposes the same small surface:
``order``, ``identity``, ``mul``, ``inv`` and the vectorised ``mul_vec`` /
``inv_vec``.
"""
from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_DENSE_ORDER = 1024
ASSOC_FULL_CHECK = 256


class GroupError(ValueError):
    pass


class FiniteGroup:
    """Group given by its multiplication table ``table[a, b] = a*b``."""

    dense = True

    def __init__(self, table, label: str | None = None, check: bool = True):
        table = np.asarray(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError("table must be a non-empty square array")
        n = table.shape[0]
        if n > MAX_DENSE_ORDER:
            raise GroupError(f"dense groups are limited to order {MAX_DENSE_ORDER}")
        self.order = n
        self.table = table
        self.label = label
        self.rows: list[list[int]] = table.tolist()
        ident = [a for a in range(n) if self.rows[a] == list(range(n))]
        if not ident:
            raise GroupError("no identity element")
        self.identity = ident[0]
        e = self.identity
        inv = [-1] * n
        for a in range(n):
            row = self.rows[a]
            for b in range(n):
                if row[b] == e:
                    inv[a] = b
                    break
        self.inv_table = np.asarray(inv, dtype=np.int32)
        self.inv_list = inv
        if check:
            self._check()

    def _check(self) -> None:
        n, t = self.order, self.table
        full = np.arange(n)
        for axis_rows in (t, t.T):
            if not np.all(np.sort(axis_rows, axis=1) == full):
                raise GroupError("table is not a Latin square")
        if min(self.inv_list) < 0:
            raise GroupError("missing inverse")
        if n <= ASSOC_FULL_CHECK:
            # (ab)c == a(bc) for all triples
            lhs = t[t[:, :, None], full[None, None, :]]
            rhs = t[full[:, None, None], t[None, :, :]]
            if not np.array_equal(lhs, rhs):
                raise GroupError("table is not associative")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 20000))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise GroupError("table is not associative")

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, label={self.label!r})"

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return self.inv_list[a]

    def mul_vec(self, a, b):
        return self.table[a, b]

    def inv_vec(self, a):
        return self.inv_table[a]

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def element_orders(self) -> list[int]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.rows[x][a]
                k += 1
            out.append(k)
        return out

    def element_order(self, a: int) -> int:
        return self.element_orders[a]

    def power(self, a: int, k: int) -> int:
        return power(self, a, k)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.rows, "label": self.label}


class _ImplicitGroup:
    """Base for arithmetic families; no table is materialised."""

    dense = False
    identity = 0
    label: str | None = None

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_vec(np.int64(a), np.int64(b)))

    def inv(self, a: int) -> int:
        return int(self.inv_vec(np.int64(a)))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def power(self, a: int, k: int) -> int:
        return power(self, a, k)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.order})"

    def to_dense(self) -> FiniteGroup:
        idx = np.arange(self.order, dtype=np.int64)
        table = self.mul_vec(idx[:, None], idx[None, :])
        return FiniteGroup(table, label=self.label, check=False)


class CyclicFamily(_ImplicitGroup):
    """C_n as integers mod n."""

    def __init__(self, n: int):
        self.order = n
        self.label = f"C{n}"

    def mul_vec(self, a, b):
        return (np.asarray(a) + np.asarray(b)) % self.order

    def inv_vec(self, a):
        return (-np.asarray(a)) % self.order

    def composition_chain(self) -> list[np.ndarray]:
        """Ascending chain 1 = G_0 < ... < G_r = G, largest primes stripped first."""
        n = self.order
        chain = [n]
        while chain[-1] > 1:
            m = chain[-1]
            # the maximal subgroup with smallest sorted element set is p*Z/n with p the least prime
            p = _least_prime_factor(m)
            chain.append(m // p)
        step = [n // m for m in chain]
        return [np.arange(0, n, s, dtype=np.int64) for s in reversed(step)]


class ElementaryAbelian2Family(_ImplicitGroup):
    """C_2^k as bitmasks under xor."""

    def __init__(self, k: int):
        self.k = k
        self.order = 1 << k
        self.label = f"C2^{k}"

    def mul_vec(self, a, b):
        return np.bitwise_xor(np.asarray(a), np.asarray(b))

    def inv_vec(self, a):
        return np.asarray(a)

    def composition_chain(self) -> list[np.ndarray]:
        return [np.arange(1 << i, dtype=np.int64) for i in range(self.k + 1)]


class DihedralFamily(_ImplicitGroup):
    """Dihedral group of order 2n; r^a s^f is encoded as a + n*f."""

    def __init__(self, n: int):
        self.n = n
        self.order = 2 * n
        self.label = f"D{n}"

    def mul_vec(self, a, b):
        n = self.n
        a, b = np.asarray(a), np.asarray(b)
        ra, fa = a % n, a // n
        rb, fb = b % n, b // n
        r = np.where(fa == 1, ra - rb, ra + rb) % n
        return r + n * (fa ^ fb)

    def inv_vec(self, a):
        n = self.n
        a = np.asarray(a)
        r, f = a % n, a // n
        return np.where(f == 1, a, (-r) % n)

    def composition_chain(self) -> list[np.ndarray]:
        rot = CyclicFamily(self.n).composition_chain()
        return rot + [np.arange(self.order, dtype=np.int64)]


def _least_prime_factor(m: int) -> int:
    p = 2
    while p * p <= m:
        if m % p == 0:
            return p
        p += 1
    return m


def power(G, a: int, k: int) -> int:
    """a**k by repeated squaring; negative k uses the inverse."""
    if k < 0:
        a, k = G.inv(a), -k
    result, base = G.identity, a
    while k:
        if k & 1:
            result = G.mul(result, base)
        base = G.mul(base, base)
        k >>= 1
    return result


@dataclass(frozen=True)
class Subgroup:
    parent: object = field(repr=False, compare=False)
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def members(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.members

    def as_group(self, label: str | None = None) -> tuple[FiniteGroup, list[int]]:
        """Re-index as a standalone group; returns (group, embedding list)."""
        return induced_group(self.parent, self.elements, label=label)


def induced_group(G, elements: Sequence[int], label: str | None = None) -> tuple[FiniteGroup, list[int]]:
    elems = list(elements)
    if G.identity in elems:
        elems.remove(G.identity)
        elems.insert(0, G.identity)
    pos = {g: i for i, g in enumerate(elems)}
    table = [[pos[G.mul(a, b)] for b in elems] for a in elems]
    return FiniteGroup(table, label=label, check=False), elems


# ---------------------------------------------------------------------------
# closure and friends


def closure(G, S: Iterable[int], words: bool = False):
    """The subgroup generated by S.

    With ``words=True`` also returns a dict mapping each element to a shortest
    positive word (tuple of indices into the list of S) computing it.
    """
    gens = list(dict.fromkeys(int(s) for s in S))
    e = G.identity
    if not G.dense and not words and len(gens) and G.order > 4096:
        return Subgroup(G, tuple(int(x) for x in _closure_vec(G, gens)))
    seen = {e: ()}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        wx = seen[x]
        for j, s in enumerate(gens):
            y = G.mul(x, s)
            if y not in seen:
                seen[y] = wx + (j,)
                queue.append(y)
    H = Subgroup(G, tuple(sorted(seen)))
    if words:
        return H, seen
    return H


def _closure_vec(G, gens) -> np.ndarray:
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    frontier = np.array([G.identity], dtype=np.int64)
    while frontier.size:
        new = np.concatenate([np.asarray(G.mul_vec(frontier, np.int64(s))).ravel() for s in gens])
        new = np.unique(new)
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    return np.flatnonzero(mask)


def generated_order(G, S) -> int:
    return closure(G, S).order


def centralizer(G, S: Iterable[int], within: Iterable[int] | None = None) -> Subgroup:
    S = list(S)
    pool = G.elements if within is None else within
    out = [g for g in pool if all(G.mul(g, s) == G.mul(s, g) for s in S)]
    return Subgroup(G, tuple(sorted(out)))


def center(G, within: Iterable[int] | None = None) -> Subgroup:
    pool = list(G.elements if within is None else within)
    return centralizer(G, pool, within=pool)


def center_and_centralizers(G, S: Iterable[int]) -> Subgroup:
    """{g : gs = sg for all s in S}; S = all of G gives the center."""
    return centralizer(G, S)


def is_subgroup(G, elements: Iterable[int]) -> bool:
    el = set(elements)
    if G.identity not in el:
        return False
    return all(G.mul(a, b) in el for a in el for b in el)


def is_normal(G, N, ambient: Iterable[int] | None = None) -> bool:
    members = N.members if isinstance(N, Subgroup) else frozenset(N)
    amb = G.elements if ambient is None else ambient
    gens = small_generating_set(G, amb) if ambient is not None else small_generating_set(G)
    ngens = small_generating_set(G, members)
    for g in gens:
        gi = G.inv(g)
        for n in ngens:
            if G.mul(G.mul(gi, n), g) not in members:
                return False
    return True


def small_generating_set(G, within: Iterable[int] | None = None) -> list[int]:
    """Greedy generating set: repeatedly add the smallest-index element of
    largest order that is not yet generated."""
    pool = sorted(set(G.elements if within is None else within))
    if not pool:
        return []
    target = len(pool)
    orders = {g: G.element_order(g) for g in pool}
    ranked = sorted(pool, key=lambda g: (-orders[g], g))
    gens: list[int] = []
    current = {G.identity}
    for g in ranked:
        if len(current) == target:
            break
        if g not in current:
            gens.append(g)
            current = set(closure(G, gens).elements)
    return gens


def conjugacy_classes(G, within: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    pool = list(G.elements if within is None else within)
    gens = small_generating_set(G, pool)
    pool_set = set(pool)
    seen: set[int] = set()
    classes = []
    for x in pool:
        if x in seen:
            continue
        cls = {x}
        queue = [x]
        while queue:
            y = queue.pop()
            for g in gens:
                z = G.mul(G.mul(G.inv(g), y), g)
                if z not in cls:
                    cls.add(z)
                    queue.append(z)
        assert cls <= pool_set
        seen |= cls
        classes.append(tuple(sorted(cls)))
    return classes


def normal_closure(G, S: Iterable[int], within: Sequence[int] | None = None) -> Subgroup:
    pool = list(G.elements if within is None else within)
    gens = small_generating_set(G, pool)
    current = set(closure(G, S).elements)
    while True:
        extra = {G.mul(G.mul(G.inv(g), x), g) for g in gens for x in current} - current
        if not extra:
            return Subgroup(G, tuple(sorted(current)))
        current = set(closure(G, list(current) + list(extra)).elements)


def normal_subgroups(G, within: Sequence[int] | None = None) -> list[Subgroup]:
    """All normal subgroups of ``within`` (default: G), as joins of class closures."""
    pool = sorted(G.elements if within is None else within)
    minimal = {}
    for cls in conjugacy_classes(G, pool):
        N = normal_closure(G, [cls[0]], pool)
        minimal[N.elements] = N
    found = dict(minimal)
    frontier = list(minimal)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(minimal):
                if set(b) <= set(a):
                    continue
                J = closure(G, a + b)
                if J.elements not in found:
                    found[J.elements] = J
                    nxt.append(J.elements)
        frontier = nxt
    return sorted(found.values(), key=lambda H: (H.order, H.elements))


def is_simple(G, within: Sequence[int] | None = None) -> bool:
    pool = sorted(G.elements if within is None else within)
    if len(pool) == 1:
        return False
    return len(normal_subgroups(G, pool)) == 2


def quotient(G, N, within: Sequence[int] | None = None) -> tuple[FiniteGroup, dict[int, int]]:
    """The factor group (within)/N with the projection map.

    Cosets are numbered by their smallest element, so coset 0 is N itself.
    """
    members = N.members if isinstance(N, Subgroup) else frozenset(N)
    pool = sorted(G.elements if within is None else within)
    if not is_normal(G, members, pool if within is not None else None):
        raise GroupError("subgroup is not normal")
    proj: dict[int, int] = {}
    reps: list[int] = []
    for g in pool:
        if g in proj:
            continue
        idx = len(reps)
        reps.append(g)
        for n in members:
            proj[G.mul(g, n)] = idx
    table = [[proj[G.mul(a, b)] for b in reps] for a in reps]
    return FiniteGroup(table, check=False), proj


# ---------------------------------------------------------------------------
# constructions


def cyclic(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, label=f"C{n}", check=False)


def direct_product(G: FiniteGroup, H: FiniteGroup, label: str | None = None) -> FiniteGroup:
    m = H.order
    ga = np.arange(G.order * m)
    a, b = ga // m, ga % m
    table = G.table[a[:, None], a[None, :]] * m + H.table[b[:, None], b[None, :]]
    lab = label or (f"{G.label}x{H.label}" if G.label and H.label else None)
    return FiniteGroup(table, label=lab, check=False)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n."""
    G = DihedralFamily(n).to_dense()
    G.label = f"D{n}"
    return G


def dicyclic(n: int) -> FiniteGroup:
    """Dic_n of order 4n: <a, x | a^{2n}, x^2 = a^n, x^-1 a x = a^-1>; a^i x^f -> i + 2n f."""
    m = 2 * n

    def mul(p, q):
        i, f = p % m, p // m
        j, g = q % m, q // m
        if f == 0:
            return (i + j) % m + m * g
        # a^i x a^j x^g = a^{i-j} x^{1+g}
        k = (i - j) % m
        if g == 0:
            return k + m
        return (k + n) % m
    table = [[mul(p, q) for q in range(2 * m)] for p in range(2 * m)]
    return FiniteGroup(table, label=f"Dic{n}")


def semidirect_cyclic(m: int, n: int, r: int, label: str | None = None) -> FiniteGroup:
    """C_m x| C_n where the generator of C_n acts by x -> x^r (needs r^n = 1 mod m)."""
    if pow(r, n, m) != 1 % m:
        raise GroupError("r^n must be 1 mod m")

    def mul(p, q):
        a, i = p % m, p // m
        b, j = q % m, q // m
        # (x^a y^i)(x^b y^j) = x^{a + b r^{-i}}? use y^i x^b y^-i = x^{b r^i}
        return (a + b * pow(r, i, m)) % m + m * ((i + j) % n)
    table = [[mul(p, q) for q in range(m * n)] for p in range(m * n)]
    return FiniteGroup(table, label=label or f"C{m}:C{n}")


def semidirect(N: FiniteGroup, H: FiniteGroup, action: Sequence[Sequence[int]], label: str | None = None) -> FiniteGroup:
    """N x| H with ``action[h]`` the automorphism h n h^-1 of N (as an index list)."""
    nN, nH = N.order, H.order

    def mul(p, q):
        a, h = p % nN, p // nN
        b, k = q % nN, q // nN
        return N.mul(a, action[h][b]) + nN * H.mul(h, k)
    table = [[mul(p, q) for q in range(nN * nH)] for p in range(nN * nH)]
    return FiniteGroup(table, label=label)


def from_elements(gens: Sequence, mul, identity, label: str | None = None, key=None) -> FiniteGroup:
    """Close a set of hashable objects under ``mul`` and tabulate."""
    key = key or (lambda x: x)
    elems = [identity]
    index = {key(identity): 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = mul(x, g)
            k = key(y)
            if k not in index:
                if len(elems) >= MAX_DENSE_ORDER:
                    raise GroupError(f"generated group exceeds {MAX_DENSE_ORDER} elements")
                index[k] = len(elems)
                elems.append(y)
        i += 1
    table = [[index[key(mul(a, b))] for b in elems] for a in elems]
    G = FiniteGroup(table, label=label, check=False)
    G.element_objects = elems
    return G


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> tuple[int, ...]:
    """Cycle notation with points 1..degree, e.g. '(1 2)(3 4 5)'."""
    img = list(range(degree))
    if not re.fullmatch(r"\s*(\([^()]*\)\s*)*", text):
        raise GroupError(f"bad permutation {text!r}")
    for cyc in _CYCLE_RE.findall(text):
        pts = [int(p) - 1 for p in re.split(r"[\s,]+", cyc.strip()) if p]
        if any(p < 0 or p >= degree for p in pts) or len(set(pts)) != len(pts):
            raise GroupError(f"bad cycle ({cyc}) for degree {degree}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


def compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Apply p first, then q (left-to-right, as in GAP)."""
    return tuple(q[i] for i in p)


def from_permutations(perms: Sequence[str | Sequence[int]], degree: int, label: str | None = None) -> FiniteGroup:
    gens = [parse_permutation(p, degree) if isinstance(p, str) else tuple(p) for p in perms]
    return from_elements(gens, compose, tuple(range(degree)), label=label)


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return FiniteGroup([[0]], label=f"S{n}")
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return from_elements(gens, compose, tuple(range(n)), label=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n <= 2:
        return FiniteGroup([[0]], label=f"A{n}")
    gens = []
    for i in range(n - 2):
        img = list(range(n))
        img[i], img[i + 1], img[i + 2] = i + 1, i + 2, i
        gens.append(tuple(img))
    return from_elements(gens, compose, tuple(range(n)), label=f"A{n}")


def matrix_group(gens: Sequence[Sequence[Sequence[int]]], p: int, label: str | None = None, projective: bool = False) -> FiniteGroup:
    """Group generated by square matrices over F_p (optionally mod scalars)."""
    d = len(gens[0])

    def norm(M):
        if not projective:
            return M
        for x in M:
            if x:
                s = pow(x, p - 2, p)
                return tuple((y * s) % p for y in M)
        return M

    def mul(A, B):
        return norm(tuple(sum(A[i * d + k] * B[k * d + j] for k in range(d)) % p for i in range(d) for j in range(d)))
    flat = [norm(tuple(x % p for row in g for x in row)) for g in gens]
    ident = tuple(1 if i == j else 0 for i in range(d) for j in range(d))
    return from_elements(flat, mul, ident, label=label)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], label="1")


# ---------------------------------------------------------------------------
# I/O


def group_from_json(data: dict) -> FiniteGroup:
    if "table" in data:
        G = FiniteGroup(data["table"], label=data.get("label"))
        if "order" in data and data["order"] != G.order:
            raise GroupError("order field does not match table")
        return G
    if "permutations" in data:
        return from_permutations(data["permutations"], int(data["degree"]), label=data.get("label"))
    raise GroupError("group JSON needs 'table' or 'permutations'")


def load_group(path) -> FiniteGroup:
    with open(path) as fh:
        return group_from_json(json.load(fh))


def dump_group(G: FiniteGroup, path) -> None:
    with open(path, "w") as fh:
        json.dump(G.to_json(), fh)
