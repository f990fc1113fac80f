"""Independent brute-force oracles for the test suite.

Nothing here imports fgdesc internals: every oracle works on plain Python
lists (Cayley tables, tuples) so that agreement with the package is evidence
rather than a tautology.
"""
from __future__ import annotations

import itertools
from collections import deque


def table_of(G) -> list[list[int]]:
    return [[G.mul(a, b) for b in range(G.order)] for a in range(G.order)]


def identity_of(t) -> int:
    n = len(t)
    return next(a for a in range(n) if t[a] == list(range(n)))


def inverse_of(t, a) -> int:
    e = identity_of(t)
    return t[a].index(e)


def bfs_closure(t, S) -> set[int]:
    """Fixed point of S u S*S u S^-1 starting from the identity."""
    e = identity_of(t)
    out = {e} | set(S)
    changed = True
    while changed:
        changed = False
        for a in list(out):
            ai = inverse_of(t, a)
            if ai not in out:
                out.add(ai)
                changed = True
            for b in list(out):
                c = t[a][b]
                if c not in out:
                    out.add(c)
                    changed = True
    return out


def power(t, x, n) -> int:
    out = identity_of(t)
    for _ in range(n):
        out = t[out][x]
    return out


def element_orders(t) -> list[int]:
    e = identity_of(t)
    out = []
    for a in range(len(t)):
        k, x = 1, a
        while x != e:
            x = t[x][a]
            k += 1
        out.append(k)
    return out


def center(t) -> set[int]:
    n = len(t)
    return {a for a in range(n) if all(t[a][b] == t[b][a] for b in range(n))}


def is_normal(t, N) -> bool:
    n = len(t)
    return all(t[t[inverse_of(t, g)][x]][g] in N for g in range(n) for x in N)


def coset_quotient(t, N) -> list[list[int]]:
    """Table of G/N, cosets numbered by first appearance of their least element."""
    n = len(t)
    reps, label = [], {}
    for g in range(n):
        if g in label:
            continue
        for x in N:
            label[t[g][x]] = len(reps)
        reps.append(g)
    return [[label[t[a][b]] for b in reps] for a in reps]


# ---------------------------------------------------------------------------
# isomorphism by brute force


def _gen_set(t) -> list[int]:
    gens, cur = [], {identity_of(t)}
    orders = element_orders(t)
    for a in sorted(range(len(t)), key=lambda a: -orders[a]):
        if a not in cur:
            gens.append(a)
            cur = bfs_closure(t, gens)
    return gens


def _words(t, gens):
    e = identity_of(t)
    seen = {e: ()}
    q = deque([e])
    while q:
        x = q.popleft()
        for j, s in enumerate(gens):
            y = t[x][s]
            if y not in seen:
                seen[y] = seen[x] + (j,)
                q.append(y)
    return seen


def brute_iso(t1, t2, fixed: dict | None = None):
    """An isomorphism t1 -> t2 (dict) or None; tries all images of a generating set."""
    n = len(t1)
    if n != len(t2) or sorted(element_orders(t1)) != sorted(element_orders(t2)):
        return None
    fixed = dict(fixed or {})
    gens = _gen_set(t1)
    words = _words(t1, gens)
    o1, o2 = element_orders(t1), element_orders(t2)
    cands = [[fixed[g]] if g in fixed else [b for b in range(n) if o2[b] == o1[g]] for g in gens]
    e2 = identity_of(t2)
    for imgs in itertools.product(*cands):
        phi = {}
        for x, w in words.items():
            y = e2
            for j in w:
                y = t2[y][imgs[j]]
            phi[x] = y
        if len(set(phi.values())) != n:
            continue
        if any(phi.get(k, v) != v for k, v in fixed.items()):
            continue
        if all(phi[t1[a][b]] == t2[phi[a]][phi[b]] for a in range(n) for b in range(n)):
            return phi
    return None


def automorphisms(t) -> list[tuple[int, ...]]:
    n = len(t)
    gens = _gen_set(t)
    words = _words(t, gens)
    o = element_orders(t)
    e = identity_of(t)
    out = []
    for imgs in itertools.product(*[[b for b in range(n) if o[b] == o[g]] for g in gens]):
        phi = [0] * n
        for x, w in words.items():
            y = e
            for j in w:
                y = t[y][imgs[j]]
            phi[x] = y
        if len(set(phi)) == n and all(phi[t[a][b]] == t[phi[a]][phi[b]] for a in range(n) for b in range(n)):
            out.append(tuple(phi))
    return out


def distinct_up_to_iso(tables) -> list:
    reps = []
    for t in tables:
        if not any(brute_iso(t, r) is not None for r in reps):
            reps.append(t)
    return reps


# ---------------------------------------------------------------------------
# Cayley-table backtracking


def latin_square_groups(n: int) -> list[list[list[int]]]:
    """All groups of order n up to isomorphism, by filling Cayley tables.

    Symmetry breaking: for each possible maximal element order k, element 1
    has order k and its powers are labelled 0, 1, ..., k-1.  The remaining
    cells are filled keeping rows and columns Latin, with associativity
    checked as soon as the entries involved are known.  Feasible for n <= 8.
    """
    if n == 1:
        return [[[0]]]
    found = []
    for k in range(2, n + 1):
        if n % k:
            continue
        t = [[-1] * n for _ in range(n)]
        for a in range(n):
            t[0][a] = a
            t[a][0] = a
        for i in range(1, k):
            t[i][1] = t[1][i] = (i + 1) % k
        cells = [(a, b) for a in range(1, n) for b in range(1, n) if t[a][b] < 0]

        def rec(i):
            if i == len(cells):
                found.append([row[:] for row in t])
                return
            a, b = cells[i]
            used = set(t[a]) | {t[x][b] for x in range(n)}
            for v in range(n):
                if v not in used:
                    t[a][b] = v
                    if _local_assoc(t, a, b, n):
                        rec(i + 1)
                    t[a][b] = -1

        rec(0)
    # the local check prunes; the full check and the order condition decide
    keep = [g for g in found if _fully_associative(g) and max(element_orders(g)) == element_orders(g)[1]]
    return distinct_up_to_iso(keep)


def _local_assoc(t, a, b, n) -> bool:
    """Associativity on triples touching the new entry (a, b)."""
    ab = t[a][b]
    for c in range(n):
        # (ab)c vs a(bc)
        bc = t[b][c]
        if bc >= 0:
            l, r = t[ab][c], t[a][bc]
            if l >= 0 and r >= 0 and l != r:
                return False
        # (ca)b vs c(ab)
        ca = t[c][a]
        if ca >= 0:
            l, r = t[ca][b], t[c][ab]
            if l >= 0 and r >= 0 and l != r:
                return False
    # triples where (a, b) appears as an outer product: (xy) = a, then a b
    for x in range(n):
        for y in range(n):
            if t[x][y] == a:
                yb = t[y][b]
                if yb >= 0:
                    r = t[x][yb]
                    if r >= 0 and r != ab:
                        return False
            if t[x][y] == b:
                ax = t[a][x]
                if ax >= 0:
                    l = t[ax][y]
                    if l >= 0 and l != ab:
                        return False
    return True


def _fully_associative(t) -> bool:
    n = len(t)
    return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))


# ---------------------------------------------------------------------------
# extensions by a cyclic group of prime order


def cyclic_extension_tables(t, p: int) -> list[list[list[int]]]:
    """Every extension of the group with table t by C_p, as tables on N x Z_p.

    (a, i)(b, j) = (a alpha^i(b) c(i, j), i + j mod p) with c = n0 when i + j >= p,
    over all automorphisms alpha and n0 with alpha(n0) = n0 and alpha^p equal to
    conjugation by n0.
    """
    n = len(t)
    auts = automorphisms(t)
    out = []
    for alpha in auts:
        powers = [tuple(range(n))]
        for _ in range(p):
            powers.append(tuple(alpha[x] for x in powers[-1]))
        for n0 in range(n):
            if alpha[n0] != n0:
                continue
            n0i = inverse_of(t, n0)
            conj = tuple(t[t[n0][x]][n0i] for x in range(n))
            if powers[p] != conj:
                continue
            size = n * p
            table = [[0] * size for _ in range(size)]
            for a in range(n):
                for i in range(p):
                    for b in range(n):
                        for j in range(p):
                            c = t[a][powers[i][b]]
                            if i + j >= p:
                                c = t[c][n0]
                            table[a * p + i][b * p + j] = c * p + (i + j) % p
            if _fully_associative(table):
                out.append(table)
    return out


# ---------------------------------------------------------------------------
# a literal Tarskian evaluator over group tables


def tarski(f, t, env: dict) -> bool:
    """Truth of f in the group with table t; tags and shortcuts are ignored."""
    from fgdesc.logic.formula import And, Const, Eq, Exists, Implies, Not, Or, Var

    e = identity_of(t)

    def term(x):
        if isinstance(x, Var):
            return env[x.name]
        if isinstance(x, Const):
            return e
        args = [term(a) for a in x.args]
        if x.name == "mul":
            return t[args[0]][args[1]]
        if x.name == "inv":
            return inverse_of(t, args[0])
        raise ValueError(x.name)

    def rec(g):
        if isinstance(g, Eq):
            return term(g.left) == term(g.right)
        if isinstance(g, Not):
            return not rec(g.body)
        if isinstance(g, And):
            return all(rec(p) for p in g.parts)
        if isinstance(g, Or):
            return any(rec(p) for p in g.parts)
        if isinstance(g, Implies):
            return (not rec(g.left)) or rec(g.right)
        old = env.get(g.var)
        want = isinstance(g, Exists)
        try:
            for v in range(len(t)):
                env[g.var] = v
                if rec(g.body) == want:
                    return want
            return not want
        finally:
            if old is None:
                env.pop(g.var, None)
            else:
                env[g.var] = old

    return rec(f)
