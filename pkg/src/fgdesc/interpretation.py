"""Uniform interpretations given as formula templates, and the transfer of
descriptions along them.

A scheme interprets a structure of signature ``target`` inside a structure of
signature ``source``: elements are ``dim``-tuples satisfying ``domain`` modulo
``equal``; every target symbol is given by the formula of its graph.  The
callables receive tuples of terms (one tuple per argument) and the parameter
terms, and return source formulas.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .builders import BuilderError, E, inv, mul
from .logic.formula import (TRUE, And, Const, Eq, Exists, Forall, Func, Implies, NameSupply, Not, Or, Rel, Var,
                            conj, exists, forall, free_vars, iter_nodes)
from .logic.metrics import length_report


class InterpretationError(BuilderError):
    pass


@dataclass
class Scheme:
    name: str
    dim: int
    params: int
    domain: Callable            # (x, ps) -> formula
    equal: Callable             # (x, y, ps) -> formula
    functions: dict = field(default_factory=dict)   # symbol -> (arity, graph(args, out, ps))
    constants: dict = field(default_factory=dict)   # symbol -> graph(out, ps)
    relations: dict = field(default_factory=dict)   # symbol -> (arity, formula(args, ps))
    source: str = "group"
    target: str = "group"


# ---------------------------------------------------------------------------
# translation


class _Translator:
    def __init__(self, scheme: Scheme, params, names: NameSupply, env: dict):
        self.s = scheme
        self.ps = tuple(params)
        self.names = names
        self.env = dict(env)

    def block(self, base: str) -> tuple:
        return tuple(Var(self.names.fresh(base)) for _ in range(self.s.dim))

    def term(self, t, fresh: list, conds: list) -> tuple:
        if isinstance(t, Var):
            if t.name not in self.env:
                raise InterpretationError(f"free variable {t.name} has no tuple")
            return self.env[t.name]
        if isinstance(t, Const):
            graph = self.s.constants.get(t.name)
            if graph is None:
                raise InterpretationError(f"{self.s.name} does not interpret constant {t.name}")
            out = self.block("c")
            fresh.extend(out)
            conds.append(graph(out, self.ps))
            return out
        arity, graph = self.s.functions.get(t.name, (None, None))
        if graph is None:
            raise InterpretationError(f"{self.s.name} does not interpret function {t.name}")
        if arity != len(t.args):
            raise InterpretationError(f"arity mismatch for {t.name}: scheme {arity}, term {len(t.args)}")
        args = [self.term(a, fresh, conds) for a in t.args]
        out = self.block("c")
        fresh.extend(out)
        conds.append(graph(args, out, self.ps))
        return out

    def atom(self, f, positive: bool):
        fresh, conds = [], []
        if isinstance(f, Eq):
            a, b = self.term(f.left, fresh, conds), self.term(f.right, fresh, conds)
            core = self.s.equal(a, b, self.ps)
        else:
            arity, rel = self.s.relations.get(f.name, (None, None))
            if rel is None:
                raise InterpretationError(f"{self.s.name} does not interpret relation {f.name}")
            if arity != len(f.args):
                raise InterpretationError(f"arity mismatch for {f.name}")
            core = rel([self.term(a, fresh, conds) for a in f.args], self.ps)
        if not fresh:
            return core
        names = [v.name for v in fresh]
        # graphs are total and functional, so either quantifier works; pick
        # the one matching the polarity to keep the alternation unchanged
        if positive:
            return exists(names, And(tuple(conds) + (core,)))
        return forall(names, Implies(conj(conds), core))

    def formula(self, f, positive: bool = True):
        if isinstance(f, (Eq, Rel)):
            return self.atom(f, positive)
        if isinstance(f, Not):
            return Not(self.formula(f.body, not positive))
        if isinstance(f, (And, Or)):
            return type(f)(tuple(self.formula(p, positive) for p in f.parts))
        if isinstance(f, Implies):
            return Implies(self.formula(f.left, not positive), self.formula(f.right, positive))
        xs = self.block(f.var)
        saved = self.env.get(f.var)
        self.env[f.var] = xs
        body = self.formula(f.body, positive)
        if saved is None:
            del self.env[f.var]
        else:
            self.env[f.var] = saved
        dom = self.s.domain(xs, self.ps)
        names = [x.name for x in xs]
        if isinstance(f, Exists):
            return exists(names, And((dom, body)) if dom != TRUE else body)
        return forall(names, Implies(dom, body) if dom != TRUE else body)


def translate(phi, scheme: Scheme, params=(), names: NameSupply | None = None, env: dict | None = None):
    """The source formula saying that the interpreted structure satisfies phi."""
    if len(params) != scheme.params:
        raise InterpretationError(f"{scheme.name} takes {scheme.params} parameters, got {len(params)}")
    names = names or NameSupply(_all_names(phi) | {p.name for p in params if isinstance(p, Var)})
    return _Translator(scheme, params, names, env or {}).formula(phi)


def _all_names(f) -> set:
    out = set(free_vars(f))
    for g in iter_nodes(f):
        if isinstance(g, (Exists, Forall)):
            out.add(g.var)
    return out


def compose(outer: Scheme, inner: Scheme, names: NameSupply) -> Scheme:
    """outer interpreted through inner: outer.source = inner.target.

    The composite has dimension outer.dim * inner.dim; the outer parameters
    become blocks of inner tuples, listed after the inner parameters.
    """
    if outer.source != inner.target:
        raise InterpretationError(f"cannot compose {outer.name} over {inner.name}: signature mismatch")
    d = inner.dim

    def split(x):
        return [tuple(x[i * d:(i + 1) * d]) for i in range(outer.dim)]

    def through(build, blocks, ps):
        # rebuild the outer formula on placeholder variables, then translate
        inner_ps, outer_ps = ps[:inner.params], ps[inner.params:]
        env = {}
        placeholders = []
        for i, blk in enumerate(blocks):
            name = f"_b{i}"
            env[name] = blk
            placeholders.append(Var(name))
        oparams = []
        for j in range(outer.params):
            name = f"_q{j}"
            env[name] = tuple(outer_ps[j * d:(j + 1) * d])
            oparams.append(Var(name))
        f = build(placeholders, oparams)
        return _Translator(inner, inner_ps, names, env).formula(f)

    def domain(x, ps):
        blocks = split(x)
        inner_dom = conj(inner.domain(b, ps[:inner.params]) for b in blocks)
        return And((inner_dom, through(lambda vs, qs: outer.domain(tuple(vs), qs), blocks, ps)))

    def equal(x, y, ps):
        bx, by = split(x), split(y)
        n = len(bx)
        return through(lambda vs, qs: outer.equal(tuple(vs[:n]), tuple(vs[n:]), qs), bx + by, ps)

    def fn(arity, graph):
        def build(args, out, ps):
            blocks = [b for a in args for b in split(a)] + split(out)
            m = outer.dim

            def g(vs, qs):
                groups = [tuple(vs[i * m:(i + 1) * m]) for i in range(arity + 1)]
                return graph(groups[:-1], groups[-1], qs)
            return through(g, blocks, ps)
        return (arity, build)

    def const(graph):
        return lambda out, ps: through(lambda vs, qs: graph(tuple(vs), qs), split(out), ps)

    def rel(arity, formula):
        def build(args, ps):
            blocks = [b for a in args for b in split(a)]
            m = outer.dim
            return through(lambda vs, qs: formula([tuple(vs[i * m:(i + 1) * m]) for i in range(arity)], qs),
                           blocks, ps)
        return (arity, build)

    return Scheme(f"{outer.name}o{inner.name}", outer.dim * d, inner.params + outer.params * d, domain, equal,
                  {k: fn(*v) for k, v in outer.functions.items()},
                  {k: const(v) for k, v in outer.constants.items()},
                  {k: rel(*v) for k, v in outer.relations.items()},
                  source=inner.source, target=outer.target)


# ---------------------------------------------------------------------------
# describing along a bi-interpretation


def _signature_symbols(sig: str):
    from .logic.sexpr import SIGNATURES

    s = SIGNATURES[sig]
    return s.functions, s.constants, s.relations


def isomorphism_conditions(comp: Scheme, eta: Callable, ps, names: NameSupply):
    """eta(x, y, ps) defines an isomorphism from the structure onto comp's copy of it."""
    functions, constants, relations = _signature_symbols(comp.target)
    blk = lambda: tuple(Var(names.fresh("h")) for _ in range(comp.dim))  # noqa: E731
    x, x2 = Var(names.fresh("k")), Var(names.fresh("k"))
    y, y2 = blk(), blk()
    yn = [v.name for v in y]
    y2n = [v.name for v in y2]
    parts = [
        # total
        Forall(x.name, exists(yn, And((comp.domain(y, ps), eta(x, y, ps))))),
        # well defined
        forall([x.name] + yn + y2n, Implies(And((eta(x, y, ps), eta(x, y2, ps))), comp.equal(y, y2, ps))),
        # injective
        forall([x.name, x2.name] + yn + y2n,
               Implies(And((eta(x, y, ps), eta(x2, y2, ps), comp.equal(y, y2, ps))), Eq(x, x2))),
        # surjective
        forall(yn, Implies(comp.domain(y, ps), Exists(x.name, eta(x, y, ps)))),
    ]
    for sym, arity in sorted(functions.items()):
        xs = [Var(names.fresh("k")) for _ in range(arity)]
        ys = [blk() for _ in range(arity)]
        out = blk()
        hyp = conj(eta(a, b, ps) for a, b in zip(xs, ys))
        img = Func(sym, tuple(xs))
        concl = exists([v.name for v in out], And((eta(img, out, ps), comp.functions[sym][1](ys, out, ps))))
        parts.append(forall([a.name for a in xs] + [v.name for b in ys for v in b], Implies(hyp, concl)))
    for sym in constants:
        out = blk()
        parts.append(exists([v.name for v in out], And((eta(Const(sym), out, ps), comp.constants[sym](out, ps)))))
    for sym, arity in sorted(relations.items()):
        xs = [Var(names.fresh("k")) for _ in range(arity)]
        ys = [blk() for _ in range(arity)]
        hyp = conj(eta(a, b, ps) for a, b in zip(xs, ys))
        r_h = Rel(sym, tuple(xs))
        r_c = comp.relations[sym][1](ys, ps)
        parts.append(forall([a.name for a in xs] + [v.name for b in ys for v in b],
                            Implies(hyp, And((Implies(r_h, r_c), Implies(r_c, r_h))))))
    return And(tuple(parts))


def interpretation_describe(delta: Scheme, gamma: Scheme | None, eta: Callable | None, phi_F):
    """Sentence over delta.source: some parameters q make delta's structure a
    model of phi_F and, when gamma and eta are given, eta an isomorphism onto
    gamma's copy of the structure inside delta's.
    """
    names = NameSupply(_all_names(phi_F))
    qs = [Var(names.fresh("q")) for _ in range(delta.params)]
    body = [translate(phi_F, delta, qs, names)]
    allq = list(qs)
    if gamma is not None:
        if gamma.target != delta.source or gamma.source != delta.target:
            raise InterpretationError("gamma must interpret delta.source in delta.target")
        comp = compose(gamma, delta, names)
        extra = [Var(names.fresh("q")) for _ in range(gamma.params * delta.dim)]
        allq += extra
        if eta is None:
            raise InterpretationError("eta is required with gamma")
        body.append(isomorphism_conditions(comp, eta, allq, names))
    f = exists([q.name for q in allq], And(tuple(body)) if len(body) > 1 else body[0])
    from .pipeline import DescriptionResult

    return DescriptionResult(f, length_report(f), {"delta": delta.name, "gamma": gamma.name if gamma else None,
                                                   "params": len(allq)}, "interpretation")


# ---------------------------------------------------------------------------
# stock schemes


def identity_interpretation(signature: str = "group") -> Scheme:
    """Each structure interpreted in itself."""
    functions, constants, relations = _signature_symbols(signature)

    def fgraph(sym):
        return lambda args, out, ps: Eq(out[0], Func(sym, tuple(a[0] for a in args)))

    return Scheme(
        f"id-{signature}", 1, 0,
        domain=lambda x, ps: TRUE,
        equal=lambda x, y, ps: Eq(x[0], y[0]),
        functions={s: (a, fgraph(s)) for s, a in functions.items()},
        constants={c: (lambda out, ps, c=c: Eq(out[0], Const(c))) for c in constants},
        relations={r: (a, lambda args, ps, r=r: Rel(r, tuple(x[0] for x in args))) for r, a in relations.items()},
        source=signature, target=signature)


def identity_eta(x, y, ps):
    return Eq(x, y[0])


def quotient_interpretation() -> Scheme:
    """G/N for (G, P) with P naming a normal subgroup N; equality is u v^-1 in P."""
    return Scheme(
        "quotient-by-P", 1, 0,
        domain=lambda x, ps: TRUE,
        equal=lambda x, y, ps: Rel("P", (mul(x[0], inv(y[0])),)),
        functions={"mul": (2, lambda a, out, ps: Eq(out[0], mul(a[0][0], a[1][0]))),
                   "inv": (1, lambda a, out, ps: Eq(out[0], inv(a[0][0])))},
        constants={"e": lambda out, ps: Eq(out[0], E)},
        source="group-pred", target="group")
