"""Straight-line programs and preprocessing chains.

A chain runs the cube construction: K(0) = {1}, and while K^-1 K misses part
of the current target subgroup, z = v0^-1 v1 x with v0, v1 in K and x in the
current generating set is chosen outside K^-1 K, after which K doubles to
K u Kz. Members of K are stored as bitmasks over z_1, z_2, ... and multiplied
in increasing index order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .builders import log2
from .group import GroupError


class SlpError(ValueError):
    pass


# ---------------------------------------------------------------------------
# straight-line programs


@dataclass
class Slp:
    """Steps are ("src", i), ("inv", j) or ("mul", j, l); i indexes ``base``."""

    base: tuple[int, ...]
    steps: list[tuple] = field(default_factory=list)
    values: list[int] = field(default_factory=list)

    @property
    def reduced_length(self) -> int:
        return sum(1 for s in self.steps if s[0] != "src")

    def __len__(self) -> int:
        return len(self.steps)

    def add(self, G, step: tuple) -> int:
        op = step[0]
        if op == "src":
            val = self.base[step[1]]
        elif op == "inv":
            val = G.inv(self.values[step[1]])
        elif op == "mul":
            val = G.mul(self.values[step[1]], self.values[step[2]])
        else:
            raise SlpError(f"unknown instruction {op!r}")
        self.steps.append(tuple(step))
        self.values.append(val)
        return len(self.steps) - 1

    def check(self, G) -> None:
        """Re-run every step against the group; raise on any mismatch."""
        for i, (step, val) in enumerate(zip(self.steps, self.values)):
            if any(j >= i for j in step[1:]) and step[0] != "src":
                raise SlpError(f"step {i} refers forward")
            op = step[0]
            if op == "src":
                want = self.base[step[1]]
            elif op == "inv":
                want = G.inv(self.values[step[1]])
            else:
                want = G.mul(self.values[step[1]], self.values[step[2]])
            if want != val:
                raise SlpError(f"step {i} has value {val}, expected {want}")

    def to_text(self) -> str:
        return "".join(" ".join(map(str, s)) + "\n" for s in self.steps)

    @classmethod
    def from_text(cls, G, base: Sequence[int], text: str) -> "Slp":
        out = cls(tuple(base))
        for n, line in enumerate(text.splitlines(), 1):
            parts = line.split()
            if not parts:
                continue
            op, args = parts[0], parts[1:]
            arity = {"src": 1, "inv": 1, "mul": 2}.get(op)
            if arity is None or len(args) != arity:
                raise SlpError(f"line {n}: bad instruction {line!r}")
            try:
                out.add(G, (op, *map(int, args)))
            except IndexError:
                raise SlpError(f"line {n}: reference out of range") from None
        return out


class _Builder:
    """Incremental SLP over a fixed base with element-level reuse."""

    def __init__(self, G, base: Sequence[int]):
        self.G = G
        self.slp = Slp(tuple(base))
        self.src_pos = {}
        for i, b in enumerate(base):
            self.src_pos.setdefault(b, i)
        self.at: dict[int, int] = {}

    def source(self, x: int) -> int:
        if x in self.at:
            return self.at[x]
        return self._push(("src", self.src_pos[x]))

    def inv(self, j: int) -> int:
        val = self.G.inv(self.slp.values[j])
        return self.at[val] if val in self.at else self._push(("inv", j))

    def mul(self, j: int, l: int) -> int:
        val = self.G.mul(self.slp.values[j], self.slp.values[l])
        return self.at[val] if val in self.at else self._push(("mul", j, l))

    def _push(self, step) -> int:
        i = self.slp.add(self.G, step)
        self.at.setdefault(self.slp.values[i], i)
        return i


# ---------------------------------------------------------------------------
# the cube construction


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


@dataclass
class ZStep:
    """z = v0^-1 v1 x with v0, v1 given as bitmasks over earlier z's."""
    element: int
    v0: int
    v1: int
    x: int
    level: int


@dataclass
class PreprocessingChain:
    group: object
    levels: list[tuple[int, ...]]            # T_1 ... T_k
    z: list[ZStep] = field(default_factory=list)
    level_end: list[int] = field(default_factory=list)   # number of z's after level l (1-based)
    slp: Slp | None = None
    z_step: list[int] = field(default_factory=list)      # SLP step computing z_j
    level_steps: list[int] = field(default_factory=list)  # SLP length after level l
    kk_sizes: list[int] = field(default_factory=list)     # |K(i)| after each z
    fast: bool = False
    _kk: dict = field(default_factory=dict, repr=False)   # level -> {element: (e0, e1)}
    _sub: dict = field(default_factory=dict, repr=False)

    @property
    def A(self) -> tuple[int, ...]:
        return tuple(s.element for s in self.z)

    def A_level(self, l: int) -> tuple[int, ...]:
        """A_l; l = 0 gives the empty set."""
        n = self.level_end[l - 1] if l else 0
        return tuple(s.element for s in self.z[:n])

    def cost(self, l: int) -> int:
        """Reduced length of the SLP prefix computing A_l from T_l."""
        n = self.level_steps[l - 1] if l else 0
        return sum(1 for s in self.slp.steps[:n] if s[0] != "src")

    def cube(self, mask: int) -> int:
        G = self.group
        out = G.identity
        for i in _bits(mask):
            out = G.mul(out, self.z[i].element)
        return out

    def word(self, l: int, h: int) -> tuple[int, int]:
        """(e0, e1) with h = K(e0)^-1 K(e1) over the z's of A_l."""
        if self.fast:
            return self._fast_word(self.level_end[l - 1] if l else 0, h)
        table = self._kk.get(l)
        if table is None:
            table = self._kk[l] = _kk_table(self.group, [s.element for s in self.z[:self.level_end[l - 1] if l else 0]])
        if h not in table:
            raise SlpError(f"element {h} is not generated at level {l}")
        return table[h]

    def _fast_word(self, i: int, h: int) -> tuple[int, int]:
        G = self.group
        while i and self._in_sub(i - 1, h):
            i -= 1
        if i == 0:
            if h != G.identity:
                raise SlpError(f"element {h} is not generated")
            return 0, 0
        e0, e1 = self._fast_word(i - 1, G.mul(h, G.inv(self.z[i - 1].element)))
        return e0, e1 | 1 << (i - 1)

    def _in_sub(self, i: int, h: int) -> bool:
        # fast chains have one z per level, so G_i = <z_1..z_i>
        if i not in self._sub:
            self._sub[i] = frozenset(self._subgroups[i])
        return h in self._sub[i]

    @staticmethod
    def word_cost(e0: int, e1: int) -> int:
        """Reduced SLP length of K(e0)^-1 K(e1) over A."""
        a, b = bin(e0).count("1"), bin(e1).count("1")
        if a and b:
            return a + b
        if a:
            return a
        return max(b - 1, 0)

    def word_term(self, e0: int, e1: int, names: Sequence, identity):
        """Term for K(e0)^-1 K(e1) given term names for z_1, z_2, ..."""
        from .builders import inv, mul, product

        left = product([names[i] for i in _bits(e0)], unit=identity) if e0 else None
        right = product([names[i] for i in _bits(e1)], unit=identity) if e1 else None
        if left is None:
            return right if right is not None else identity
        left = inv(left)
        return left if right is None else mul(left, right)


def _kk_table(G, zs: Sequence[int]) -> dict[int, tuple[int, int]]:
    """Every element of K^-1 K mapped to its cheapest (e0, e1)."""
    K = [(0, G.identity)]
    for i, z in enumerate(zs):
        K += [(m | 1 << i, G.mul(k, z)) for m, k in K]
    best: dict[int, tuple[int, int]] = {}
    cost = {}
    for m0, k0 in K:
        ik = G.inv(k0)
        for m1, k1 in K:
            h = G.mul(ik, k1)
            c = PreprocessingChain.word_cost(m0, m1)
            if h not in cost or c < cost[h] or (c == cost[h] and (m0, m1) < best[h]):
                cost[h], best[h] = c, (m0, m1)
    return best


def _kk_set(G, K: Sequence[int]) -> set[int]:
    arr = np.asarray(K, dtype=np.int64)
    if G.dense:
        return set(np.unique(G.table[G.inv_table[arr][:, None], arr[None, :]]).tolist())
    return set(np.unique(G.mul_vec(G.inv_vec(arr)[:, None], arr[None, :])).tolist())


def _ordered(K: list[tuple[int, int]]) -> list[tuple[int, int]]:
    return sorted(K, key=lambda me: (bin(me[0]).count("1"), me[1]))


def _choose(G, K, kk: set, xs: Sequence[int]):
    """Least (v0, v1, x) with v0^-1 v1 x outside K^-1 K, or None."""
    order = _ordered(K)
    seen = set()
    for m0, k0 in order:
        ik = G.inv(k0)
        for m1, k1 in order:
            v = G.mul(ik, k1)
            if v in seen:
                continue
            seen.add(v)
            for x in xs:
                z = G.mul(v, x)
                if z not in kk:
                    return m0, m1, x, z
    return None


def _cube_step(chain: PreprocessingChain, b: _Builder, mask: int) -> int:
    """SLP step for K(mask), reusing the prefix products already emitted."""
    prefix: dict = chain._sub.setdefault("prefix", {})
    if mask in prefix:
        return prefix[mask]
    top = mask.bit_length() - 1
    rest = mask & ~(1 << top)
    j = chain.z_step[top] if not rest else b.mul(_cube_step(chain, b, rest), chain.z_step[top])
    prefix[mask] = j
    return j


def _quotient_step(chain, b, e0: int, e1: int) -> int | None:
    """Step for K(e0)^-1 K(e1); None for the empty word."""
    u = b.inv(_cube_step(chain, b, e0)) if e0 else None
    if e1:
        j = _cube_step(chain, b, e1)
        u = j if u is None else b.mul(u, j)
    return u


def _emit(chain: PreprocessingChain, b: _Builder, step: ZStep) -> int:
    u = _quotient_step(chain, b, step.v0, step.v1)
    xs = b.source(step.x)
    return xs if u is None else b.mul(u, xs)


def preprocessing_chain(G, levels: Sequence[Iterable[int]], subgroups: Sequence[Sequence[int]] | None = None,
                        stop: int | None = None) -> PreprocessingChain:
    """Run the cube construction over T_1 ⊆ T_2 ⊆ ... .

    ``subgroups`` (G_0 = 1, G_1, ...) enables the order-2 fast path used for
    tableless families: when |G_l : G_{l-1}| = 2, T_l adds one element t and
    K^-1 K = G_{l-1}, the rule picks z = t and K^-1 K becomes G_l. With
    ``stop`` set the run ends as soon as that element lies in K^-1 K.
    """
    levels = [tuple(dict.fromkeys(int(x) for x in T)) for T in levels]
    for lo, hi in zip(levels, levels[1:]):
        if not set(lo) <= set(hi):
            raise GroupError("generating sets must ascend")
    chain = PreprocessingChain(G, levels)
    base = levels[-1] if levels else ()
    b = _Builder(G, base)
    chain.slp = b.slp
    chain._builder = b

    fast = subgroups is not None and stop is None and all(
        len(subgroups[l]) == 2 * len(subgroups[l - 1]) and len(levels[l - 1]) == len(levels[l - 2] if l > 1 else ()) + 1
        for l in range(1, len(levels) + 1))
    if not G.dense and not fast:
        raise GroupError("tableless groups need an index-2 series for the chain")
    chain.fast = fast
    if fast:
        chain._subgroups = [tuple(s) for s in subgroups]
        for l, T in enumerate(levels, 1):
            t = T[-1]
            step = ZStep(t, 0, 0, t, l)
            chain.z.append(step)
            chain.z_step.append(_emit(chain, b, step))
            chain.kk_sizes.append(len(subgroups[l]))
            chain.level_end.append(len(chain.z))
            chain.level_steps.append(len(b.slp))
        return chain

    K = [(0, G.identity)]
    kk = {G.identity}
    for l, T in enumerate(levels, 1):
        xs = sorted(T)
        while stop is None or stop not in kk:
            pick = _choose(G, K, kk, xs)
            if pick is None:
                break
            m0, m1, x, z = pick
            step = ZStep(z, m0, m1, x, l)
            chain.z.append(step)
            chain.z_step.append(_emit(chain, b, step))
            bit = 1 << (len(chain.z) - 1)
            K = K + [(m | bit, G.mul(k, z)) for m, k in K]
            kk = _kk_set(G, [k for _, k in K])
            chain.kk_sizes.append(len(kk))
        chain.level_end.append(len(chain.z))
        chain.level_steps.append(len(b.slp))
    return chain


def reachability_slp(G, S: Iterable[int], g: int) -> Slp:
    """An SLP over S ending in g, of reduced length at most (log|G| + 1)^2."""
    S = tuple(dict.fromkeys(int(s) for s in S))
    if g in S:
        out = Slp(S)
        out.add(G, ("src", S.index(g)))
        return out
    if not S:
        raise SlpError("the empty set generates only the identity, which no SLP over it computes")
    chain = preprocessing_chain(G, [S], stop=g)
    zs = [s.element for s in chain.z]
    table = _kk_table(G, zs)
    if g not in table:
        raise SlpError(f"element {g} is not in the generated subgroup")
    e0, e1 = table[g]
    b = chain._builder
    target = _quotient_step(chain, b, e0, e1)
    if target is None:
        # g = 1 written as x^-1 x
        j = b.source(S[0])
        target = b.mul(b.inv(j), j)
    slp = chain.slp
    if slp.values[target] != g:
        raise AssertionError("reachability SLP computed the wrong element")
    if target != len(slp) - 1:
        # make g the last value without adding a reduced step
        slp.steps.append(("src", S.index(slp.values[target])) if slp.steps[target][0] == "src"
                         else slp.steps[target])
        slp.values.append(g)
    return slp


def swift_generating_set(G, S: Iterable[int] | None = None) -> tuple[int, ...]:
    """A generating set A of <S> (default G) with every element a word of length <= 2|A|."""
    S = sorted(G.elements) if S is None else sorted(set(S))
    return preprocessing_chain(G, [S]).A


def word_radius(G, A: Sequence[int]) -> int:
    """Largest word length over A needed to reach an element of <A> (BFS over A and inverses)."""
    gens = list(dict.fromkeys(list(A) + [G.inv(a) for a in A]))
    dist = {G.identity: 0}
    frontier = [G.identity]
    r = 0
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = G.mul(x, s)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        if nxt:
            r += 1
        frontier = nxt
    return r


def chain_violations(chain: PreprocessingChain) -> list[str]:
    """Every broken invariant of a dense chain, as text (empty when all hold)."""
    from .group import closure

    G = chain.group
    out = []
    try:
        chain.slp.check(G)
    except SlpError as exc:
        out.append(str(exc))
    K = [G.identity]
    for i, s in enumerate(chain.z):
        K = K + [G.mul(k, s.element) for k in K]
        if len(set(K)) != 2 ** (i + 1):
            out.append(f"|K({i + 1})| = {len(set(K))}, not {2 ** (i + 1)}")
    for l in range(1, len(chain.levels) + 1):
        Gl = closure(G, chain.levels[l - 1]).elements
        Al = chain.A_level(l)
        lg = log2(len(Gl))
        if closure(G, Al).elements != Gl:
            out.append(f"<A_{l}> != <T_{l}>")
        if len(Al) > lg:
            out.append(f"|A_{l}| = {len(Al)} > log|G_{l}| = {lg}")
        if len(Gl) > 1 and chain.cost(l) >= max(lg * lg, 1):
            out.append(f"cost(A_{l} | T_{l}) = {chain.cost(l)} >= {lg * lg}")
        if l > 1 and not set(chain.A_level(l - 1)) <= set(Al):
            out.append(f"A_{l - 1} not inside A_{l}")
        worst = max(chain.word_cost(*chain.word(l, h)) for h in Gl)
        if len(Gl) > 1 and worst >= 2 * lg:
            out.append(f"element cost {worst} >= 2 log|G_{l}| = {2 * lg}")
    return out


# ---------------------------------------------------------------------------
# the formula psi


def preproc_formula(chain: PreprocessingChain, t_terms: dict, a_names: Sequence[str], names, v: int,
                    existential: bool = False):
    """psi(T, A): the SLP steps outside A as existential intermediates, each
    defined by one equation, plus <T_l> inside <A_l> for every level.

    ``t_terms`` maps elements of T to terms; ``a_names`` names z_1, z_2, ... .
    The other inclusion holds because A_l is computed from T_l.
    """
    from .builders import E, generators_in, inv, mul
    from .logic.formula import And, Eq, TRUE, Var, conj, exists
    from .logic.formula import SlpWitness

    slp = chain.slp
    z_of = {}
    for j, i in enumerate(chain.z_step):
        if slp.steps[i][0] != "src":
            z_of.setdefault(i, j)
    term: list = []
    hidden: list[str] = []
    eqs = []
    for i, step in enumerate(slp.steps):
        if step[0] == "src":
            term.append(t_terms[slp.base[step[1]]])
            continue
        rhs = inv(term[step[1]]) if step[0] == "inv" else mul(term[step[1]], term[step[2]])
        if i in z_of:
            name = a_names[z_of[i]]
        else:
            name = names.fresh("u")
            hidden.append(name)
        term.append(Var(name))
        eqs.append(Eq(Var(name), rhs))
    for j, i in enumerate(chain.z_step):
        if z_of.get(i) != j:
            eqs.append(Eq(Var(a_names[j]), term[i]))
    parts = []
    if eqs:
        parts.append(exists(hidden, conj(eqs), tag=SlpWitness(len(hidden))) if hidden else conj(eqs))
    for l in range(1, len(chain.levels) + 1):
        T = [t_terms[t] for t in chain.levels[l - 1]]
        A = [Var(a) for a in a_names[:chain.level_end[l - 1]]]
        if T:
            parts.append(generators_in(v, T, A, names, existential))
    return And(tuple(parts)) if parts else TRUE
