"""Relator-value maps of extensions and the words that pin them down.

For an extension E of N by H with lifts s'_1..s'_k of generators of H, a
word w over s_1..s_k with trivial image in H evaluates at the lifts to an
element of N; the map w -> w(s') is phi_E. Two extensions with the same
action differ by a Z(N)-valued map, and pin_down_subset picks few words on
which those differences are already visible.
"""
from __future__ import annotations

import json
from math import gcd
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Sequence

from .extensions import EXTENSION_BUDGET, BudgetExceeded, ExtensionData, cyclic_extensions, enumerate_extensions, \
    extend_action, extension_search_size
from .group import FiniteGroup, Subgroup, center, closure, induced_group
from .presentations import PresentationSpec, eval_word, format_word

WORD_LIMIT = 200_000


class DescriberError(ValueError):
    pass


# ---------------------------------------------------------------------------
# words and phi_E


def reduced_words(k: int, max_len: int, limit: int = WORD_LIMIT) -> list[tuple[int, ...]]:
    """Freely reduced words over k generators, by length then letter order (s before s^-1)."""
    letters = [x for i in range(1, k + 1) for x in (i, -i)]
    out = [()]
    layer = [()]
    for _ in range(max_len):
        nxt = [w + (x,) for w in layer for x in letters if not w or w[-1] != -x]
        out += nxt
        if len(out) > limit:
            raise DescriberError(f"more than {limit} words of length <= {max_len}")
        layer = nxt
    return out


def _coset_map(E, N: Subgroup):
    members = N.members
    proj, reps = {}, []
    for g in E.elements:
        if g in proj:
            continue
        for n in members:
            proj[E.mul(g, n)] = len(reps)
        reps.append(g)
    return proj


def quotient_radius(E, N: Subgroup, lifts: Sequence[int]) -> int:
    """Word length (letters and inverses) needed to reach every coset of N from the lifts."""
    proj = _coset_map(E, N)
    gens = list(lifts) + [E.inv(s) for s in lifts]
    seen = {proj[E.identity]: E.identity}
    frontier = [E.identity]
    r = 0
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = E.mul(x, s)
                if proj[y] not in seen:
                    seen[proj[y]] = y
                    nxt.append(y)
        if nxt:
            r += 1
        frontier = nxt
    if len(seen) != len(set(proj.values())):
        raise DescriberError("lifts do not generate E modulo N")
    return r


def trivial_words(E, N: Subgroup, lifts: Sequence[int], max_len: int, cyclic: bool = False):
    """Words of length <= max_len (nonempty) whose value lies in N; cyclic: powers of s only."""
    members = N.members
    if cyclic:
        cand = [(1,) * j for j in range(1, max_len + 1)] + [(-1,) * j for j in range(1, max_len + 1)]
        cand.sort(key=lambda w: (len(w), w[0] < 0))
    else:
        cand = reduced_words(len(lifts), max_len)[1:]
    return [w for w in cand if eval_word(E, w, lifts) in members]


def phi_restricted(E, N: Subgroup, lifts: Sequence[int], m: int | None = None, cyclic: bool = False) -> dict:
    """phi_E on the words of length <= 3m with trivial image; m defaults to the quotient radius."""
    r = quotient_radius(E, N, lifts)
    if m is None:
        m = r
    elif m < r:
        raise DescriberError(f"m = {m} is below the quotient radius {r}")
    out = {(): E.identity}
    for w in trivial_words(E, N, lifts, 3 * m, cyclic):
        out[w] = eval_word(E, w, lifts)
    return out


# ---------------------------------------------------------------------------
# abelian groups and pin_down_subset


def _p_parts(n: int) -> list[tuple[int, int]]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def big_omega(n: int) -> int:
    """Number of prime factors with multiplicity."""
    return sum(e for _, e in _p_parts(n))


def _basis(A, elements: Sequence[int]) -> list[int]:
    """A basis of the abelian p-group on ``elements``: b_1, b_2, ... with A = <b_1> x <b_2> x ... ."""
    pool = sorted(elements)
    basis: list[int] = []
    span = {A.identity}
    while len(span) < len(pool):
        # element of largest order modulo span, then corrected into a complement
        def qorder(x):
            k, y = 1, x
            while y not in span:
                y = A.mul(y, x)
                k += 1
            return k
        x = max((g for g in pool if g not in span), key=lambda g: (qorder(g), -g))
        e = qorder(x)
        xe = A.power(x, e)
        fix = next(y for y in sorted(span) if A.power(y, e) == A.inv(xe))
        b = A.mul(x, fix)
        basis.append(b)
        span = set(closure(A, list(span) + [b]).elements)
    return basis


@dataclass
class _Coords:
    """Coordinates of an abelian p-group A_p embedded in C_q^k (q the exponent)."""
    q: int
    table: dict          # element -> tuple of ints mod q


def _coordinates(A, elements: Sequence[int]) -> _Coords:
    basis = _basis(A, elements)
    orders = [A.element_order(b) for b in basis]
    q = max(orders, default=1)
    table = {}
    for exps in iproduct(*[range(o) for o in orders]):
        g = A.identity
        for b, c in zip(basis, exps):
            g = A.mul(g, A.power(b, c))
        table[g] = tuple(c * (q // o) for c, o in zip(exps, orders))
    return _Coords(q, table)


def _primary(A) -> list[tuple[int, list[int], int]]:
    """(p, elements of A_p, exponent e with x -> x^e the projection onto A_p)."""
    n = A.order
    out = []
    for p, e in _p_parts(n):
        pe = p ** e
        rest = n // pe
        # CRT idempotent: 1 mod p^e, 0 mod the rest
        idem = rest * pow(rest, -1, pe) % n if rest > 1 else 1
        members = sorted({A.power(x, idem) for x in A.elements})
        out.append((p, members, idem))
    return out


def _pin_cyclic(q: int, gens: list[list[int]], positions: list) -> list:
    """The greedy maximal-order selection over C_q-valued vectors."""
    chosen = []
    live = list(range(len(positions)))
    gens = [g for g in gens if any(g)]

    def order(a):
        return q // gcd(a, q)

    while gens:
        best = None
        for x in live:
            for gi, g in enumerate(gens):
                o = order(g[x] % q)
                if best is None or o > best[0]:
                    best = (o, x, gi)
        o, x, gi = best
        if o == 1:
            break
        v = gens[gi]
        vx = v[x] % q
        chosen.append(positions[x])
        live.remove(x)
        nxt = []
        for j, w in enumerate(gens):
            if j == gi:
                continue
            r = _solve_multiple(w[x] % q, vx, q)
            u = [(a - r * b) % q for a, b in zip(w, v)]
            if any(u):
                nxt.append(u)
        gens = nxt
    return chosen


def _solve_multiple(a: int, b: int, q: int) -> int:
    """r with r*b = a mod q (a lies in <b>)."""
    for r in range(q):
        if r * b % q == a:
            return r
    raise DescriberError("coordinate not in the cyclic image")


def pin_down_subset(A, X: Sequence, V_gens: Sequence[Sequence[int]]) -> list:
    """Y inside X with every g in V = <V_gens> vanishing on Y already zero.

    A is an abelian FiniteGroup; each generator lists an A-element per entry of X.
    Runs the greedy selection on each p-primary part after splitting A_p into
    cyclic coordinates of the common exponent.
    """
    X = list(X)
    if not A.is_abelian():
        raise DescriberError("A must be abelian")
    for g in V_gens:
        if len(g) != len(X):
            raise DescriberError("generator length does not match X")
    chosen: list[int] = []
    for p, members, idem in _primary(A):
        co = _coordinates(A, members)
        k = len(next(iter(co.table.values()))) if co.table else 0
        if k == 0:
            continue
        positions = [(i, c) for i in range(len(X)) for c in range(k)]
        gens = []
        for g in V_gens:
            vec = []
            for a in g:
                vec.extend(co.table[A.power(a, idem)])
            gens.append(vec)
        for i, _ in _pin_cyclic(co.q, gens, positions):
            if i not in chosen:
                chosen.append(i)
    return [X[i] for i in sorted(chosen)]


def span_vectors(A, V_gens: Sequence[Sequence[int]], limit: int = 10 ** 6) -> set:
    """Every element of V = <V_gens> inside A^X (pointwise product)."""
    if not V_gens:
        return set()
    zero = tuple(A.identity for _ in V_gens[0])
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in V_gens:
                w = tuple(A.mul(a, b) for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if len(seen) > limit:
                        raise DescriberError(f"V has more than {limit} elements")
        frontier = nxt
    return seen


def abelian_rank(A, elements: Sequence[int] | None = None) -> int:
    """Minimal number of generators of an abelian group (elements of a subgroup, default all)."""
    members = sorted(A.elements if elements is None else elements)
    best = 0
    for p, _ in _p_parts(len(members)):
        # rank of the p-part = log_p of the number of elements of order dividing p
        n = sum(1 for x in members if A.power(x, p) == A.identity)
        r = 0
        while n > 1:
            n //= p
            r += 1
        best = max(best, r)
    return best


def vector_group(A, vectors: set) -> FiniteGroup:
    """V as a standalone group (for rank computations)."""
    vs = sorted(vectors)
    pos = {v: i for i, v in enumerate(vs)}
    table = [[pos[tuple(A.mul(a, b) for a, b in zip(u, w))] for w in vs] for u in vs]
    return FiniteGroup(table, check=False)


# ---------------------------------------------------------------------------
# difference groups and distinguishing words


@dataclass
class DifferenceGroup:
    Z: FiniteGroup                       # Z(N), re-indexed
    embed: list[int]                     # Z index -> N element
    X: list[tuple[int, ...]]
    generators: list[tuple[int, ...]]    # Z-valued vectors over X
    rank_bound: int


@dataclass
class WordReport:
    level: int
    words: list[tuple[int, ...]]
    generators: tuple[str, ...]
    values: list[int] = field(default_factory=list)
    method: str = "oracle"
    d_bound: int = 0

    def rendered(self) -> list[str]:
        return [format_word(w, self.generators) for w in self.words]

    def to_json(self) -> str:
        return json.dumps({"level": self.level, "words": self.rendered(), "values": self.values,
                           "method": self.method})


def difference_group(exts: Sequence[ExtensionData], X: Sequence[tuple[int, ...]], relators: int = 1) -> DifferenceGroup:
    """Pointwise differences phi_E phi_E0^-1 of the listed extensions, all sharing N = {0..n-1}."""
    base = exts[0]
    E0 = base.E
    N_elems = base.N.elements
    Ngrp, _ = induced_group(E0, N_elems)
    # extensions are built on N x H with N first, so N positions agree across all E
    Zs = center(E0, N_elems)
    Z, embed = induced_group(E0, Zs.elements)
    zpos = {g: i for i, g in enumerate(embed)}
    vals0 = [eval_word(E0, w, base.lifts) for w in X]
    gens = []
    for ext in exts[1:]:
        E = ext.E
        vec = []
        for w, a0 in zip(X, vals0):
            a = eval_word(E, w, ext.lifts)
            d = E.mul(a, E.inv(a0))   # same index in every E since N sits on 0..n-1
            if d not in zpos:
                raise DescriberError("difference outside the centre of N")
            vec.append(zpos[d])
        if any(v != Z.identity for v in vec):
            gens.append(tuple(vec))
    return DifferenceGroup(Z, embed, list(X), gens, relators * big_omega(Z.order))


def distinguishing_words(N: FiniteGroup, H: FiniteGroup, gens: Sequence[int], gen_action: Sequence[Sequence[int]],
                         pres: PresentationSpec | None = None, m: int | None = None, level: int = 0,
                         budget: int = EXTENSION_BUDGET) -> WordReport:
    """Words over lifts of ``gens`` (generators of H) that separate all
    extensions of N by H with the given generator actions (right conjugation).

    Falls back to the relators of ``pres`` when the enumeration is over budget.
    """
    names = tuple(pres.generators) if pres is not None else tuple(f"s{i + 1}" if len(gens) > 1 else "s"
                                                                  for i in range(len(gens)))
    if len(gens) == 1 and pres is None:
        names = ("s",)
    Z = center(N)
    if Z.order == 1:
        return WordReport(level, [], names, method="oracle")
    is_cyclic = len(gens) == 1 and closure(H, gens).order == H.order

    def fallback():
        if pres is None:
            raise DescriberError("no presentation for the relator fallback")
        return WordReport(level, [tuple(r) for r in pres.relators], names, method="fallback")

    try:
        if is_cyclic:
            exts = cyclic_extensions(N, H.order, gen_action[0])
        else:
            if extension_search_size(N, H) > budget:
                raise BudgetExceeded("factor-set search over budget")
            action = extend_action(N, H, gens, gen_action)
            exts = enumerate_extensions(N, H, action, gens=gens, budget=budget)
    except BudgetExceeded:
        return fallback()
    if not exts:
        raise DescriberError("no extension realizes the action")
    E0 = exts[0]
    m = quotient_radius(E0.E, E0.N, E0.lifts) if m is None else m
    classes = phi_classes(exts, 3 * m)
    # grow X by word length until it separates as many phi maps as the full 3m set
    X: list = []
    try:
        for layer in _trivial_layers(E0, 3 * m, is_cyclic):
            X.extend(layer)
            if len({tuple(eval_word(e.E, w, e.lifts) for w in X) for e in exts}) == classes:
                break
    except DescriberError:
        return fallback()
    nrel = len(pres.relators) if pres is not None else 1
    D = difference_group(exts, X, nrel)
    Y = pin_down_subset(D.Z, D.X, D.generators) if D.generators else []
    return WordReport(level, Y, names, method="oracle", d_bound=D.rank_bound)


def _trivial_layers(ext: ExtensionData, max_len: int, cyclic: bool):
    """Nonempty words of each length 1..max_len with value in N, one list per length."""
    E, members, lifts = ext.E, ext.N.members, ext.lifts
    if cyclic:
        for j in range(1, max_len + 1):
            yield [w for w in ((1,) * j, (-1,) * j) if eval_word(E, w, lifts) in members]
        return
    letters = [x for i in range(1, len(lifts) + 1) for x in (i, -i)]
    layer = [()]
    total = 0
    for _ in range(max_len):
        layer = [w + (x,) for w in layer for x in letters if not w or w[-1] != -x]
        total += len(layer)
        if total > WORD_LIMIT:
            raise DescriberError(f"more than {WORD_LIMIT} candidate words")
        yield [w for w in layer if eval_word(E, w, lifts) in members]


def phi_agree(E1: ExtensionData, E2: ExtensionData, max_len: int) -> bool:
    """phi_E1 and phi_E2 agree on all words of length <= max_len.

    Runs the two lift tuples in lockstep, so the state space is pairs of
    elements rather than words.
    """
    G1, G2 = E1.E, E2.E
    steps = [(s, t) for s, t in zip(E1.lifts, E2.lifts)] + [(G1.inv(s), G2.inv(t)) for s, t in zip(E1.lifts, E2.lifts)]
    n1 = E1.N.members
    start = (G1.identity, G2.identity)
    seen = {start}
    frontier = [start]
    for _ in range(max_len):
        nxt = []
        for a, b in frontier:
            for s, t in steps:
                pair = (G1.mul(a, s), G2.mul(b, t))
                if pair in seen:
                    continue
                if pair[0] in n1 and pair[0] != pair[1]:
                    return False
                seen.add(pair)
                nxt.append(pair)
        frontier = nxt
    return True


def phi_classes(exts: Sequence[ExtensionData], max_len: int) -> int:
    """Number of distinct restricted phi maps among the extensions."""
    reps: list[ExtensionData] = []
    for e in exts:
        if not any(phi_agree(r, e, max_len) for r in reps):
            reps.append(e)
    return len(reps)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def isomorphic_over(E1: ExtensionData, E2: ExtensionData) -> bool:
    """An isomorphism fixing N pointwise and sending lifts to lifts."""
    from .iso import is_isomorphic

    fixed = {a: a for a in E1.N.elements}
    for s, t in zip(E1.lifts, E2.lifts):
        if fixed.get(s, t) != t:
            return False
        fixed[s] = t
    return is_isomorphic(E1.E, E2.E, fixed=fixed) is not None


def agree_on(E1: ExtensionData, E2: ExtensionData, words) -> bool:
    return all(eval_word(E1.E, w, E1.lifts) == eval_word(E2.E, w, E2.lifts) for w in words)


# ---------------------------------------------------------------------------
# sentence parts for one level of a composition series


def level_data(G, series, i: int):
    """(N, H, gens in H, generator actions on N, embedding of N) for level i >= 1.

    N = G_{i-1} re-indexed, H = G_i / G_{i-1}, gens are the images of the new
    generators T_i minus T_{i-1}.
    """
    from .group import quotient

    lower, upper = series.subgroups[i - 1], series.subgroups[i]
    N, embed = induced_group(G, lower)
    pos = {g: j for j, g in enumerate(embed)}
    H, proj = quotient(G, lower, upper)
    new = series.factors[i - 1].new_gens
    gens = tuple(proj[t] for t in new)
    actions = [tuple(pos[G.mul(G.mul(G.inv(t), a), t)] for a in embed) for t in new]
    return N, H, gens, actions, embed


def level_words(G, series, i: int, budget: int = EXTENSION_BUDGET) -> WordReport:
    """Distinguishing words for level i, with their values in the given group."""
    factor = series.factors[i - 1]
    lower = series.subgroups[i - 1]
    new = factor.new_gens
    if len(lower) == 1:
        rep = WordReport(i, [], tuple(factor.presentation.generators), method="oracle")
    elif not G.dense:
        rep = _implicit_words(G, series, i)
    else:
        N, H, gens, actions, _ = level_data(G, series, i)
        rep = distinguishing_words(N, H, gens, actions, factor.presentation, level=i, budget=budget)
    rep.values = [eval_word(G, w, new) for w in rep.words]
    return rep


def _implicit_words(G, series, i: int) -> WordReport:
    """Tableless families: the factor is C_p and the word s^p pins the extension.

    The relator s^p normally generates R, so phi_E is fixed by its value there.
    """
    factor = series.factors[i - 1]
    return WordReport(i, [(1,) * factor.order], tuple(factor.presentation.generators), method="fallback")


# ---------------------------------------------------------------------------
# exhaustive checks of the extension criteria


@dataclass
class CriterionResult:
    pairs: int = 0                 # (N, H) pairs examined
    actions: int = 0
    extension_pairs: int = 0
    skipped: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)


def check_extension_criteria(N: FiniteGroup, H: FiniteGroup, budget: int | None = EXTENSION_BUDGET,
                             result: CriterionResult | None = None) -> CriterionResult:
    """For every generator action of H on N: restricted phi maps agree exactly
    when the extensions are isomorphic over N (lifts to lifts), and agreement on
    the distinguishing words already forces such an isomorphism."""
    from .group import small_generating_set
    from .iso import automorphisms

    res = result or CriterionResult()
    res.pairs += 1
    if budget is None:
        budget = extension_search_size(N, H)
    if extension_search_size(N, H) > budget:
        res.skipped.append((N.label, H.label))
        return res
    gens = tuple(small_generating_set(H))
    auts = automorphisms(N)
    inv_auts = [tuple(sorted(range(N.order), key=lambda a: p[a])) for p in auts]
    for choice in iproduct(range(len(auts)), repeat=len(gens)):
        gen_action = [inv_auts[c] for c in choice]
        action = extend_action(N, H, gens, gen_action)
        exts = enumerate_extensions(N, H, action, gens=gens, budget=budget)
        if not exts:
            continue
        res.actions += 1
        if len(exts) < 2:
            continue
        rep = distinguishing_words(N, H, gens, gen_action, budget=budget)
        L = 3 * quotient_radius(exts[0].E, exts[0].N, exts[0].lifts)
        # both relations are equivalences, so comparing class labels covers every pair
        iso_label = _labels(exts, isomorphic_over)
        phi_label = _labels(exts, lambda x, y: phi_agree(x, y, L))
        n = len(exts)
        res.extension_pairs += n * (n - 1) // 2
        if _partition(iso_label) != _partition(phi_label):
            res.counterexamples.append(("3m", N.label, H.label, choice))
        by_words: dict = {}
        for e, lab in zip(exts, iso_label):
            key = tuple(eval_word(e.E, w, e.lifts) for w in rep.words)
            by_words.setdefault(key, set()).add(lab)
        if any(len(labs) > 1 for labs in by_words.values()):
            res.counterexamples.append(("words", N.label, H.label, choice))
    return res


def _labels(items, same) -> list[int]:
    reps: list = []
    out = []
    for x in items:
        for i, r in enumerate(reps):
            if same(r, x):
                out.append(i)
                break
        else:
            reps.append(x)
            out.append(len(reps) - 1)
    return out


def _partition(labels) -> set:
    groups: dict = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    return {tuple(g) for g in groups.values()}
