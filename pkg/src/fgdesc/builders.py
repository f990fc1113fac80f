"""Explicit formula families: powers, generation, cyclic groups, fields, presentations.

All builders return immutable formulas whose free variables are the names
passed in.  Bound variables are drawn from a NameSupply so that nothing a
caller passes in is ever captured; pass the same supply to several builders
to keep their bound names apart.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .logic.formula import (FALSE, TRUE, And, Const, Eq, Exists, Forall, Func, Generation, Implies, NameSupply,
                            Not, Or, Power, PowerUpTo, Rel, Relativized, Var, conj, disj, exists, forall,
                            free_vars, iter_nodes, neq, term_vars, with_tag)
from .logic.metrics import symbol_length

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

E = Const("e")


class BuilderError(ValueError):
    pass


class LengthBoundExceeded(AssertionError):
    pass


@lru_cache(maxsize=None)
def length_constants() -> dict:
    raw = resources.files("fgdesc.data").joinpath("config.toml").read_text()
    return dict(tomllib.loads(raw)["length"])


def log2(m: int) -> int:
    """min{r : 2^r >= m}."""
    return (m - 1).bit_length() if m > 1 else 0


def _check(name: str, f, bound_arg: float):
    c = length_constants()[name]
    n = symbol_length(f)
    if n > c * max(bound_arg, 1):
        raise LengthBoundExceeded(f"{name}: length {n} exceeds {c} * {bound_arg}")
    return f


def _term(x):
    return Var(x) if isinstance(x, str) else x


def mul(a, b, op: str = "mul"):
    return Func(op, (_term(a), _term(b)))


def inv(a):
    return Func("inv", (_term(a),))


def product(terms, op: str = "mul", unit=E):
    """Left-associated product; the empty product is ``unit``."""
    terms = [_term(t) for t in terms]
    if not terms:
        return unit
    out = terms[0]
    for t in terms[1:]:
        out = Func(op, (out, t))
    return out


def word_term(word, gens) -> object:
    """Term for a word (generator i is i+1, inverse -(i+1)) over generator terms."""
    gens = [_term(g) for g in gens]
    return product([gens[abs(s) - 1] if s > 0 else inv(gens[abs(s) - 1]) for s in word])


def commutator(a, b):
    """[a, b] = a^-1 b^-1 a b."""
    return product([inv(a), inv(b), _term(a), _term(b)])


def member(z, xs):
    """z is one of the terms xs."""
    return disj(Eq(_term(z), _term(x)) for x in xs) if xs else FALSE


# ---------------------------------------------------------------------------
# powers


def theta(n: int, g, x, names: NameSupply | None = None, op: str = "mul", unit=E):
    """x^n = g via repeated squaring (existential, monoid language)."""
    if n < 1:
        raise BuilderError("theta needs n >= 1")
    g, x = _term(g), _term(x)
    if n == 1:
        return Eq(g, x, tag=Power(1, g, x, op))
    names = names or NameSupply(term_vars(g) | term_vars(x))
    bits = bin(n)[2:]
    k = len(bits)
    ys = names.many(k, "y")
    parts = [Eq(Var(ys[0]), x), Eq(Var(ys[-1]), g)]
    for i in range(1, k):
        sq = Func(op, (Var(ys[i - 1]), Var(ys[i - 1])))
        parts.append(Eq(Var(ys[i]), Func(op, (sq, x)) if bits[i] == "1" else sq))
    f = exists(ys, And(tuple(parts)), tag=Power(n, g, x, op))
    return _check("theta", f, log2(n))


def chi(n: int, g, x, names: NameSupply | None = None, op: str = "mul", unit=E):
    """x^r = g for some 0 <= r < 2^log(n)."""
    if n < 1:
        raise BuilderError("chi needs n >= 1")
    g, x = _term(g), _term(x)
    names = names or NameSupply(term_vars(g) | term_vars(x))
    k = log2(n)
    ys = names.many(k + 1, "y")
    parts = [Eq(Var(ys[0]), unit), Eq(Var(ys[k]), g)]
    for i in range(k):
        sq = Func(op, (Var(ys[i]), Var(ys[i])))
        parts.append(Or((Eq(Var(ys[i + 1]), Func(op, (sq, x))), Eq(Var(ys[i + 1]), sq))))
    f = exists(ys, And(tuple(parts)), tag=PowerUpTo(n, g, x, op, unit.name))
    return _check("chi", f, log2(n) + 1)


# ---------------------------------------------------------------------------
# generation


def _delta(i: int, g, xs, names: NameSupply):
    if i == 0:
        return disj([Eq(g, x) for x in xs] + [Eq(g, E)])
    u, v, w = names.fresh("u"), names.fresh("v"), names.fresh("w")
    inner = Implies(Or((Eq(Var(w), Var(u)), Eq(Var(w), Var(v)))), _delta(i - 1, Var(w), xs, names))
    return Exists(u, Exists(v, And((Eq(g, mul(u, v)), Forall(w, inner)))))


def alpha(k: int, v: int, g, xs, names: NameSupply | None = None):
    """g lies in <xs> (exact on groups of order <= v); alternating, length O(k + log v)."""
    g, xs = _term(g), tuple(_term(x) for x in xs)
    if len(xs) != k:
        raise BuilderError("alpha: k does not match the number of generators")
    names = names or NameSupply(term_vars(g).union(*[term_vars(x) for x in xs]))
    f = _delta(log2(v), g, xs, names)
    f = with_tag(f, Generation(g, xs, v))
    return _check("alpha", f, k + log2(v) + 1)


def beta(k: int, v: int, g, xs, names: NameSupply | None = None):
    """g lies in <xs> (exact on groups of order <= v); existential and negation-free.

    Follows the preprocessing construction: z_1..z_s form the cube generators,
    z_{s+1} = g, and each z_{t+1} = p_t^-1 q_t y_t with p_t, q_t in the cube K(t)
    spanned by z_1..z_t and y_t a generator (y_s = 1).  Each disjunction
    choosing y_t is placed inside the block for level t; this only reorders
    conjuncts.
    """
    g, xs = _term(g), tuple(_term(x) for x in xs)
    if len(xs) != k:
        raise BuilderError("beta: k does not match the number of generators")
    names = names or NameSupply(term_vars(g).union(*[term_vars(x) for x in xs]))
    s = log2(v)
    if k == 0:
        f = Eq(g, E, tag=Generation(g, xs, v))
        return f
    zs = names.many(s + 1, "z")
    ys = names.many(s + 1, "y")
    parts = [Eq(g, Var(zs[s])), Eq(Var(ys[s]), E)]
    for t in range(s + 1):
        ps = names.many(t + 1, "p")
        qs = names.many(t + 1, "q")
        level = []
        if t < s:
            level.append(member(ys[t], xs))
        level += [Eq(Var(ps[0]), E), Eq(Var(qs[0]), E),
                  Eq(Var(zs[t]), product([inv(ps[t]), Var(qs[t]), Var(ys[t])]))]
        for j in range(t):
            for a in (ps, qs):
                level.append(Or((Eq(Var(a[j + 1]), mul(a[j], zs[j])), Eq(Var(a[j + 1]), Var(a[j])))))
        parts.append(exists(ps + qs, And(tuple(level))))
    f = exists(zs + ys, And(tuple(parts)), tag=Generation(g, xs, v))
    return _check("beta", f, k * max(s, 1) + s * s)


def generation(k: int, v: int, g, xs, names: NameSupply | None = None, existential: bool = False):
    return (beta if existential else alpha)(k, v, g, xs, names)


def generates(v: int, xs, names: NameSupply, existential: bool = False):
    """forall y: y in <xs>."""
    y = names.fresh("g")
    return Forall(y, generation(len(xs), v, Var(y), xs, names, existential))


def generators_in(v: int, ys, xs, names: NameSupply, existential: bool = False):
    """Every y in ys lies in <xs>, with one generation formula."""
    if not ys:
        return TRUE
    if len(ys) == 1:
        return generation(len(xs), v, _term(ys[0]), xs, names, existential)
    w = names.fresh("g")
    return Forall(w, Implies(member(w, ys), generation(len(xs), v, Var(w), xs, names, existential)))


# ---------------------------------------------------------------------------
# cyclic groups


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def cyclic_sentence(p: int, k: int):
    """Describes C_{p^k}: some h has h^{p^k} = 1, h^{p^{k-1}} != 1 and generates."""
    if not _is_prime(p):
        raise BuilderError(f"{p} is not prime")
    if k < 1:
        raise BuilderError("cyclic_sentence needs k >= 1")
    names = NameSupply()
    h = names.fresh("h")
    n = p ** k
    g = names.fresh("g")
    f = Exists(h, And((theta(n, E, h, names), Not(theta(n // p, E, h, names)),
                       Forall(g, chi(n, Var(g), Var(h), names)))))
    return _check("cyclic", f, log2(n))


def cyclic_generator_formula(p: int, t, names: NameSupply):
    """(H, t) with H cyclic of prime order p generated by t: t != 1, t^p = 1."""
    return And((neq(_term(t), E), theta(p, E, t, names)))


# ---------------------------------------------------------------------------
# relativization


def relativize(f, domain, equal, names: NameSupply):
    """Restrict quantifiers with ``domain(var)`` and replace u = v by ``equal(u, v)``.

    ``domain`` and ``equal`` are callables returning formulas; tags are dropped
    below the root since the tag semantics no longer apply.
    """
    if isinstance(f, Eq):
        return equal(f.left, f.right)
    if isinstance(f, Rel):
        return Rel(f.name, f.args)
    if isinstance(f, Not):
        return Not(relativize(f.body, domain, equal, names))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(relativize(p, domain, equal, names) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(relativize(f.left, domain, equal, names), relativize(f.right, domain, equal, names))
    body = relativize(f.body, domain, equal, names)
    if isinstance(f, Exists):
        return Exists(f.var, And((domain(Var(f.var)), body)))
    return Forall(f.var, Implies(domain(Var(f.var)), body))


def _relativize_eq(f, equal):
    if isinstance(f, Eq):
        return equal(f.left, f.right)
    if isinstance(f, Rel):
        return Rel(f.name, f.args)
    if isinstance(f, Not):
        return Not(_relativize_eq(f.body, equal))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(_relativize_eq(p, equal) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(_relativize_eq(f.left, equal), _relativize_eq(f.right, equal))
    return type(f)(f.var, _relativize_eq(f.body, equal))


def quotient_relativization(phi, constants: dict, ambient, kernel, v: int, names: NameSupply,
                            existential: bool = False, centralize=None):
    """(<ambient>/K, constants) |= phi, with K = <kernel> or the centralizer of ``centralize``.

    Quantifiers are restricted to <ambient>; equality u = v becomes
    u v^-1 in K.  ``constants`` maps phi's free variables to outer terms.
    """
    from .logic.formula import substitute

    # ambient None: the whole structure, no restriction needed
    ambient = tuple(_term(a) for a in ambient) if ambient is not None else ()

    def domain(x):
        if not ambient:
            return TRUE
        return generation(len(ambient), v, x, ambient, names, existential)

    if centralize is None:
        kernel_t = tuple(_term(a) for a in kernel)

        def equal(a, b):
            d = mul(a, inv(b))
            return generation(len(kernel_t), v, d, kernel_t, names, existential)
    else:
        cz = tuple(_term(a) for a in centralize)

        def equal(a, b):
            d = mul(a, inv(b))
            return conj(Eq(mul(d, c), mul(c, d)) for c in cz)

    body = relativize(phi, domain, equal, names) if ambient else _relativize_eq(phi, equal)
    body = substitute(body, {k: _term(t) for k, t in constants.items()})
    tag = Relativized(phi, tuple((k, _term(t)) for k, t in sorted(constants.items())), ambient,
                      None if centralize is not None else tuple(_term(a) for a in kernel), v,
                      tuple(_term(a) for a in centralize) if centralize is not None else ())
    return with_tag(body, tag)


# ---------------------------------------------------------------------------
# presentations of simple groups


@dataclass(frozen=True)
class PresentationFormula:
    formula: object  # free variables = generator names
    generators: tuple[str, ...]
    images: tuple[int, ...] | None


def presentation_formula(pres, v: int, gen_names=None, names: NameSupply | None = None,
                         existential: bool = False, nontrivial: bool = True):
    """x_1 != 1, every relator is 1, and the x_i generate."""
    gen_names = tuple(gen_names or [f"x{i + 1}" for i in range(len(pres.generators))])
    names = names or NameSupply(gen_names)
    parts = []
    if nontrivial:
        parts.append(neq(Var(gen_names[0]), E))
    parts += [Eq(word_term(r, gen_names), E) for r in pres.relators]
    parts.append(generates(v, [Var(x) for x in gen_names], names, existential))
    return And(tuple(parts))


def presentation_description(G, pres, v: int | None = None, existential: bool = False, closed: bool = False):
    """Describes (G, g) for simple G presented by ``pres``; closed=True quantifies the g."""
    from .presentations import verify_presents

    images = verify_presents(G, pres)
    if images[0] == G.identity and G.order > 1:
        raise BuilderError("first generator image is trivial")
    v = v or G.order
    gens = tuple(f"x{i + 1}" for i in range(len(pres.generators)))
    if existential and len(gens) > max(log2(G.order), 1):
        raise BuilderError("existential variant needs k <= log|G|")
    f = presentation_formula(pres, v, gens, NameSupply(gens), existential)
    if closed:
        f = exists(gens, f)
    return PresentationFormula(f, gens, images)


def general_presentation_description(G, pres, closed: bool = False):
    """Describes (G, g) for any finite G presented by ``pres``.

    The relators and generation make a model H = <x> a quotient of G.  A
    strict subnormal chain <A_1> < ... < <A_r> of length r = composition
    length of G then rules out proper quotients, whose series are shorter.
    """
    from .presentations import verify_presents
    from .series import composition_series
    from .slp import preprocessing_chain

    gens = tuple(f"x{i + 1}" for i in range(len(pres.generators)))
    names = NameSupply(gens)
    if G.order == 1:
        y = names.fresh("g")
        f = And((Forall(y, Eq(Var(y), E)),) + tuple(Eq(Var(x), E) for x in gens)) if gens else Forall(y, Eq(Var(y), E))
        return PresentationFormula(exists(gens, f) if closed else f, gens, tuple(G.identity for _ in gens))
    images = verify_presents(G, pres)
    v = G.order
    series = composition_series(G)
    chain = preprocessing_chain(G, series.gensets[1:], subgroups=series.subgroups if not G.dense else None)
    a_names = names.many(len(chain.z), "a")
    av = [Var(a) for a in a_names]
    parts = []
    for l in range(1, len(series.factors) + 1):
        lo, hi = chain.level_end[l - 2] if l > 1 else 0, chain.level_end[l - 1]
        low = av[:lo]
        lower = set(series.subgroups[l - 1])
        # a new z outside G_{l-1} keeps the step proper
        out = next(j for j in range(lo, hi) if chain.z[j].element not in lower)
        parts.append(Not(alpha(lo, v, av[out], low, names)) if low else neq(av[out], E))
        if low:
            conjugates = [product([inv(b), a, b]) for b in av[lo:hi] for a in low]
            w = names.fresh("g")
            parts.append(Forall(w, Implies(member(w, conjugates), alpha(lo, v, Var(w), low, names))))
    rels = [Eq(word_term(r, gens), E) for r in pres.relators]
    f = And((exists(a_names, conj(parts)),) + tuple(rels) + (generates(v, [Var(x) for x in gens], names),))
    if closed:
        f = exists(gens, f)
    bound = pres.length + log2(v) ** 2
    return PresentationFormula(_check("presentation", f, bound), gens, images)


# ---------------------------------------------------------------------------
# characteristically simple groups


def char_simple_sentence(S, k: int, pres=None):
    """Describes S^k for a simple group S."""
    from .group import is_simple

    if k < 1:
        raise BuilderError("k must be positive")
    if not is_simple(S):
        raise BuilderError("S is not simple")
    v = S.order ** k
    names = NameSupply()
    if S.is_abelian():
        p = S.order
        xs = names.many(k, "x")
        xv = [Var(x) for x in xs]
        z1, z2 = names.fresh("c"), names.fresh("c")
        commute = Forall(z1, Forall(z2, Implies(And((member(z1, xv), member(z2, xv))),
                                                Eq(mul(z1, z2), mul(z2, z1)))))
        # no k-1 elements generate: rules out smaller elementary abelian groups
        ws = names.many(k - 1, "w")
        witness = names.fresh("g")
        small = forall(ws, Exists(witness, Not(alpha(k - 1, v, Var(witness), [Var(w) for w in ws], names))))
        orders = Forall(z1, Implies(member(z1, xv), theta(p, E, Var(z1), names)))
        f = exists(xs, And((orders, commute, generates(v, xv, names), small)))
        return _check("char_simple", f, log2(v) + 1)
    from .presentations import simple_presentations

    if pres is None:
        two = [p for p in simple_presentations(S.order) if len(p.generators) == 2]
        if not two:
            raise BuilderError(f"no 2-generator catalog presentation of order {S.order}")
        pres = two[0]
    xs, ys = names.many(k, "x"), names.many(k, "y")
    xv, yv = [Var(x) for x in xs], [Var(y) for y in ys]
    parts = [generates(v, xv + yv, names)]
    parts += [neq(commutator(x, y), E) for x, y in zip(xv, yv)]
    z, w1, w2 = names.fresh("c"), names.fresh("c"), names.fresh("c")
    parts.append(forall([z, w1, w2], Implies(
        And((member(z, xv), member(w1, yv), member(w2, yv), neq(commutator(z, w1), E), neq(commutator(z, w2), E))),
        Eq(Var(w1), Var(w2)))))
    # for each generating pair: trivial center of <z, w> and G / C(z, w) |= phi_S
    z, w, c = names.fresh("c"), names.fresh("c"), names.fresh("c")
    centre = Forall(c, Implies(And((alpha(2, v, Var(c), [Var(z), Var(w)], names),
                                    Eq(mul(c, z), mul(z, c)), Eq(mul(c, w), mul(w, c)))), Eq(Var(c), E)))
    inner_names = NameSupply(names.taken)
    gens = inner_names.many(len(pres.generators), "s")
    phi_s = exists(gens, presentation_formula(pres, S.order, gens, inner_names))
    quot = quotient_relativization(phi_s, {}, None, None, v, names, centralize=(Var(z), Var(w)))
    parts.append(forall([z, w], Implies(And((member(z, xv), member(w, yv), neq(commutator(z, w), E))),
                                         And((centre, quot)))))
    f = exists(xs + ys, And(tuple(parts)))
    return f


# ---------------------------------------------------------------------------
# fields


ADD, FMUL = "add", "mul"
ZERO, ONE = Const("zero"), Const("one")


def _fadd(a, b):
    return Func(ADD, (_term(a), _term(b)))


def _fmul(a, b):
    return Func(FMUL, (_term(a), _term(b)))


def field_axioms(names: NameSupply):
    """Commutative ring with 1, nonzero inverses, 0 != 1."""
    x, y, z = (Var(n) for n in names.many(3, "r"))
    ax = [
        Eq(_fadd(_fadd(x, y), z), _fadd(x, _fadd(y, z))),
        Eq(_fadd(x, y), _fadd(y, x)),
        Eq(_fadd(x, ZERO), x),
        Eq(_fmul(_fmul(x, y), z), _fmul(x, _fmul(y, z))),
        Eq(_fmul(x, y), _fmul(y, x)),
        Eq(_fmul(x, ONE), x),
        Eq(_fmul(x, _fadd(y, z)), _fadd(_fmul(x, y), _fmul(x, z))),
    ]
    triple = forall([x.name, y.name, z.name], And(tuple(ax)))
    w = names.fresh("r")
    neg = Forall(x.name, Exists(w, Eq(_fadd(x, Var(w)), ZERO)))
    recip = Forall(x.name, Implies(neq(x, ZERO), Exists(w, Eq(_fmul(x, Var(w)), ONE))))
    return And((neq(ZERO, ONE), triple, neg, recip))


def _prime_divisors(n: int) -> list[int]:
    return [d for d in range(2, n + 1) if n % d == 0 and _is_prime(d)]


def field_sentence(q: int, names: NameSupply | None = None):
    """Describes F_q among rings.

    Beyond x^q = x for all x and characteristic p, we ask for one x outside
    every maximal subfield, i.e. x^(p^(n/r)) != x for each prime r | n.  A
    single clause x^(p^(n-1)) != x does not exclude proper subfields when n
    has a divisor other than 1 and n (F_4 would satisfy the sentence for 16).
    """
    from .fields import prime_power

    pn = prime_power(q)
    if pn is None:
        raise BuilderError(f"{q} is not a prime power")
    p, n = pn
    names = names or NameSupply()
    x = names.fresh("f")
    parts = []
    if n > 1:
        gen = Exists(x, conj(Not(theta(p ** (n // r), Var(x), Var(x), names)) for r in _prime_divisors(n)))
        parts.append(gen)
    parts.append(field_axioms(names))
    parts.append(theta(p, ZERO, ONE, names, op=ADD, unit=ZERO))
    parts.append(Forall(x, theta(q, Var(x), Var(x), names)))
    f = And(tuple(parts))
    return _check("field", f, log2(q))


def difference_field_sentence(q: int, k: int, names: NameSupply | None = None):
    """Describes (F_q, x -> x^(p^k))."""
    from .fields import prime_power

    pn = prime_power(q)
    if pn is None:
        raise BuilderError(f"{q} is not a prime power")
    p, n = pn
    names = names or NameSupply()
    x = names.fresh("f")
    sig = Forall(x, theta(p ** (k % n), Func("sigma", (Var(x),)), Var(x), names))
    f = And((field_sentence(q, names), sig))
    return _check("field", f, 2 * log2(q))


def polynomial_zero(coeffs, x, names: NameSupply):
    """sum_i coeffs[i] x^i = 0 by Horner's rule; coefficients are integers mod p."""
    x = _term(x)
    n = len(coeffs) - 1
    hs = names.many(n + 1, "h")
    cs = []
    parts = [Eq(Var(hs[n]), ONE if coeffs[n] == 1 else ZERO)]
    if coeffs[n] != 1:
        raise BuilderError("polynomial must be monic")
    for j in range(n - 1, -1, -1):
        a = coeffs[j]
        step = _fmul(hs[j + 1], x)
        if a == 0:
            parts.append(Eq(Var(hs[j]), step))
        else:
            c = names.fresh("k")
            cs.append(c)
            parts.append(theta(a, Var(c), ONE, names, op=ADD, unit=ZERO))
            parts.append(Eq(Var(hs[j]), _fadd(step, Var(c))))
    parts.append(Eq(Var(hs[0]), ZERO))
    return exists(hs + cs, And(tuple(parts)))


def field_constant_formula(q: int, c: int, field=None, var: str = "c"):
    """Describes (F_q, c): a field sentence plus 'var is a zero of the minimal polynomial of c'."""
    from .fields import FiniteField

    F = field or FiniteField(q)
    names = NameSupply([var])
    poly = F.minimal_polynomial(c)
    f = And((field_sentence(q, names), polynomial_zero(poly, Var(var), names)))
    return _check("field", f, 2 * log2(q))


def field_tuple_formula(q: int, values, field=None, var_prefix: str = "c"):
    """Describes (F_q, c_1..c_m) via a multiplicative generator b and exponents."""
    from .fields import FiniteField

    F = field or FiniteField(q)
    vars_ = [f"{var_prefix}{i + 1}" for i in range(len(values))]
    names = NameSupply(vars_)
    b = F.multiplicative_generator()
    logs = {}
    cur = 1
    for e in range(q - 1):
        logs.setdefault(cur, e)
        cur = F.mul(cur, b)
    bv = names.fresh("b")
    parts = [polynomial_zero(F.minimal_polynomial(b), Var(bv), names)]
    for v, c in zip(vars_, values):
        if c == 0:
            parts.append(Eq(Var(v), ZERO))
        elif logs[c] == 0:
            parts.append(Eq(Var(v), ONE))
        else:
            parts.append(theta(logs[c], Var(v), Var(bv), names))
    f = And((field_sentence(q, names), Exists(bv, And(tuple(parts)))))
    return f


def count_tagged(f) -> int:
    return sum(1 for g in iter_nodes(f) if g.tag is not None)


__all__ = [
    "BuilderError", "LengthBoundExceeded", "length_constants", "log2", "theta", "chi", "alpha", "beta",
    "generation", "generates", "cyclic_sentence", "relativize", "quotient_relativization",
    "presentation_formula", "presentation_description", "char_simple_sentence", "field_axioms", "field_sentence",
    "difference_field_sentence", "field_constant_formula", "field_tuple_formula", "polynomial_zero",
    "word_term", "product", "commutator", "member",
]
