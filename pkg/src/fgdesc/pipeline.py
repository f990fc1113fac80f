"""Assemble a describing sentence for a finite group from its composition series.

The sentence is an existential block over the generating set T (level by
level) and the preprocessing set A, followed by four conjunct groups:

  psi    A is computed from T by the recorded SLP, and <T_l> lies in <A_l>
  chi    <T_i>/<T_{i-1}> is the right simple group, generated by the new t's
  kappa  conjugating T_{i-1} by each new generator gives the recorded A-words
  rho    the distinguishing words of each level take the recorded A-values

plus a final clause saying that T generates the whole group.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .builders import (E, BuilderError, LengthBoundExceeded, generates, generation, generators_in, inv,
                       length_constants, log2, mul, presentation_formula, product, quotient_relativization, theta,
                       word_term)
from .extension_describer import level_words
from .group import closure, small_generating_set
from .iso import is_automorphism
from .logic.formula import (TRUE, And, Eq, Exists, Forall, Func, Implies, NameSupply, Not, Rel, Var, conj, exists, forall,
                            free_vars, neq)
from .logic.metrics import length_report, symbol_length
from .logic.sexpr import render
from .series import composition_series
from .slp import preproc_formula, preprocessing_chain

MODES = ("full", "sigma_bounded", "presentation", "interpretation")


@dataclass
class DescriptionResult:
    formula: object
    metrics: object
    provenance: dict = field(default_factory=dict)
    mode: str = "full"

    @property
    def free(self) -> tuple[str, ...]:
        return tuple(sorted(free_vars(self.formula)))

    def check_metrics(self) -> bool:
        return length_report(self.formula) == self.metrics

    def to_json(self) -> dict:
        return {"mode": self.mode, "metrics": self.metrics.as_dict(), "provenance": self.provenance}

    def write_bundle(self, out_dir, slp_dump: str | None = None) -> list[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = [out / "formula.sexp", out / "report.json"]
        paths[0].write_text(render(self.formula) + "\n")
        paths[1].write_text(json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n")
        if slp_dump is not None:
            paths.append(out / "slp.txt")
            paths[2].write_text(slp_dump)
        return paths


# ---------------------------------------------------------------------------
# the skeleton shared by every variant


class _Skeleton:
    """Names and conjuncts for one group; variants add clauses to ``extra``."""

    def __init__(self, G, existential: bool = False, budget=None):
        self.G = G
        self.v = G.order
        self.existential = existential
        self.series = composition_series(G)
        self.levels = self.series.gensets[1:]
        self.T = self.series.gensets[-1] if self.levels else ()
        subs = self.series.subgroups if not G.dense else None
        self.chain = preprocessing_chain(G, self.levels, subgroups=subs)
        self.t_names = [f"t{j + 1}" for j in range(len(self.T))]
        self.a_names = [f"a{j + 1}" for j in range(len(self.chain.z))]
        self.names = NameSupply(self.t_names + self.a_names)
        self.t_var = {t: Var(n) for t, n in zip(self.T, self.t_names)}
        self.a_vars = [Var(a) for a in self.a_names]
        self.budget = budget
        self.reports = []
        self.parts: dict[str, list] = {"psi": [], "chi": [], "kappa": [], "rho": [], "generation": []}
        self._build()

    # A-word for h at level l
    def aword(self, l: int, h: int):
        return self.chain.word_term(*self.chain.word(l, h), self.a_vars, E)

    def _gen(self, g, xs):
        return generation(len(xs), self.v, g, xs, self.names, self.existential)

    def _build(self):
        self.parts["psi"].append(preproc_formula(self.chain, self.t_var, self.a_names, self.names, self.v,
                                                 self.existential))
        for i, factor in enumerate(self.series.factors, start=1):
            self.parts["chi"].append(self._chi(i, factor))
            if i > 1:
                self.parts["kappa"].extend(self._kappa(i, factor))
                self.parts["rho"].extend(self._rho(i, factor))
        self.parts["generation"].append(generates(self.v, [self.t_var[t] for t in self.T], self.names,
                                                  self.existential))

    def _chi(self, i: int, factor):
        low = [self.t_var[t] for t in self.series.gensets[i - 1]]
        if factor.kind == "cyclic":
            t = self.t_var[factor.new_gens[0]]
            p = factor.order
            if not low:
                return And((neq(t, E), theta(p, E, t, self.names)))
            y = self.names.fresh("y")
            return And((Not(self._gen(t, low)),
                        Exists(y, And((theta(p, Var(y), t, self.names), self._gen(Var(y), low))))))
        pres = factor.presentation
        xs = self.names.many(len(pres.generators), "x")
        inner = presentation_formula(pres, self.v, xs, self.names, self.existential)
        consts = {x: self.t_var[g] for x, g in zip(xs, factor.new_gens)}
        ambient = [self.t_var[t] for t in self.series.gensets[i]]
        if not low:
            # G_0 = 1: plain relativization to <T_1>, equality unchanged
            return quotient_relativization(inner, consts, ambient, [E], self.v, self.names, self.existential)
        return quotient_relativization(inner, consts, ambient, low, self.v, self.names, self.existential)

    def _kappa(self, i: int, factor):
        G = self.G
        out = []
        for g in factor.new_gens:
            gi = G.inv(g)
            for w in self.series.gensets[i - 1]:
                h = G.mul(G.mul(gi, w), g)
                lhs = product([inv(self.t_var[g]), self.t_var[w], self.t_var[g]])
                out.append(Eq(lhs, self.aword(i - 1, h)))
        return out

    def _rho(self, i: int, factor):
        rep = level_words(self.G, self.series, i) if self.budget is None else \
            level_words(self.G, self.series, i, budget=self.budget)
        self.reports.append(rep)
        new = [self.t_var[g] for g in factor.new_gens]
        out = []
        for w, h in zip(rep.words, rep.values):
            rhs = self.aword(i - 1, h)
            if len(set(w)) == 1 and len(w) > 3:
                # long powers by repeated squaring; r names the value
                s = w[0]
                base = new[abs(s) - 1]
                r = self.names.fresh("r")
                out.append(Exists(r, And((Eq(Var(r), rhs),
                                          theta(len(w), Var(r), base if s > 0 else inv(base), self.names)))))
            else:
                out.append(Eq(word_term(w, new), rhs))
        return out

    # assembly

    def conjuncts(self) -> list:
        return [f for key in ("psi", "chi", "kappa", "rho", "generation") for f in self.parts[key]]

    def sentence(self, extra=(), free=()):
        body = And(tuple(self.conjuncts()) + tuple(extra))
        bound = [n for n in self.t_names + self.a_names if n not in free]
        return exists(bound, body)

    def provenance(self, extra_lengths: dict | None = None) -> dict:
        lengths = {k: sum(symbol_length(f) for f in v) for k, v in self.parts.items()}
        lengths.update(extra_lengths or {})
        return {
            "order": self.v,
            "conjuncts": lengths,
            "conjunct_count": sum(len(v) for v in self.parts.values()),
            "prefix": len(self.t_names) + len(self.a_names),
            "factors": self.series.factor_names(),
            "T": list(self.T),
            "A": list(self.chain.A),
            "words": [json.loads(r.to_json()) for r in self.reports],
        }


def _trivial_sentence():
    return Forall("x1", Eq(Var("x1"), E))


def _check_length(f, G, key: str, power: int):
    c = length_constants()[key]
    n = symbol_length(f)
    bound = c * max(log2(G.order), 1) ** power
    if n > bound:
        raise LengthBoundExceeded(f"{key}: length {n} exceeds {c} * log^{power}|G| = {bound}")


def _result(f, sk, mode, extra_lengths=None, check_key="describe", power=3):
    if sk is None:
        prov = {"order": 1, "conjuncts": {}, "conjunct_count": 0, "prefix": 0, "factors": [], "T": [], "A": [],
                "words": []}
    else:
        prov = sk.provenance(extra_lengths)
        _check_length(f, sk.G, check_key, power)
    return DescriptionResult(f, length_report(f), prov, mode)


# ---------------------------------------------------------------------------
# public operations


def describe_group(G, existential: bool = False) -> DescriptionResult:
    """A sentence whose only model (up to isomorphism) is G."""
    mode = "sigma_bounded" if existential else "full"
    if G.order == 1:
        return _result(_trivial_sentence(), None, mode)
    sk = _Skeleton(G, existential)
    return _result(sk.sentence(), sk, mode, check_key="describe_sigma" if existential else "describe",
                   power=4 if existential else 3)


def describe_sigma_bounded(G) -> DescriptionResult:
    """describe_group with the existential generation formulas throughout."""
    return describe_group(G, existential=True)


def describe_with_tuple(G, gs, names=None) -> DescriptionResult:
    """A formula in free variables y1..yj describing (G, g1..gj)."""
    gs = [int(g) for g in gs]
    ys = list(names or [f"y{j + 1}" for j in range(len(gs))])
    if len(ys) != len(gs):
        raise BuilderError("one variable name per tuple element")
    if G.order == 1:
        f = And((_trivial_sentence(),) + tuple(Eq(Var(y), E) for y in ys))
        return _result(f, None, "full")
    sk = _Skeleton(G)
    clash = set(ys) & set(sk.t_names + sk.a_names)
    if clash:
        raise BuilderError(f"tuple names clash with bound names: {sorted(clash)}")
    top = len(sk.levels)
    extra = [Eq(Var(y), sk.aword(top, g)) for y, g in zip(ys, gs)]
    f = sk.sentence(extra)
    return _result(f, sk, "full", {"tuple": sum(symbol_length(x) for x in extra)})


def describe_with_subgroup(G, U) -> DescriptionResult:
    """Sentence over the signature with a unary predicate P describing (G, U)."""
    U = sorted(set(int(u) for u in U))
    if not U or closure(G, U).elements != tuple(U):
        raise BuilderError("U is not a subgroup")
    x = "p1"
    if G.order == 1:
        f = And((_trivial_sentence(), Forall(x, Rel("P", (Var(x),)))))
        return _result(f, None, "full")
    sk = _Skeleton(G)
    gens = small_generating_set(G, within=U) if len(U) > 1 else []
    us = sk.names.many(len(gens), "u")
    top = len(sk.levels)
    defs = [Eq(Var(u), sk.aword(top, g)) for u, g in zip(us, gens)]
    xv = Var(sk.names.fresh("p"))
    inside = generation(len(us), sk.v, xv, [Var(u) for u in us], sk.names) if us else Eq(xv, E)
    pred = Rel("P", (xv,))
    iff = Forall(xv.name, And((Implies(pred, inside), Implies(inside, pred))))
    clause = exists(us, And(tuple(defs) + (iff,)))
    return _result(sk.sentence([clause]), sk, "full", {"subgroup": symbol_length(clause)})


def describe_with_automorphism(G, a) -> DescriptionResult:
    """Sentence over the signature with a unary function aut describing (G, a)."""
    a = [int(x) for x in a]
    if not is_automorphism(G, a):
        raise BuilderError("a is not an automorphism")
    if G.order == 1:
        f = And((_trivial_sentence(), Forall("x1", Eq(_aut(Var("x1")), E))))
        return _result(f, None, "full")
    sk = _Skeleton(G)
    top = len(sk.levels)
    images = [Eq(_aut(sk.t_var[t]), sk.aword(top, a[t])) for t in sk.T]
    x, y = sk.names.fresh("w"), sk.names.fresh("w")
    hom = forall([x, y], Eq(_aut(mul(x, y)), mul(_aut(Var(x)), _aut(Var(y)))))
    onto = Forall(x, Exists(y, Eq(_aut(Var(y)), Var(x))))
    extra = images + [hom, onto]
    return _result(sk.sentence(extra), sk, "full", {"automorphism": sum(symbol_length(f) for f in extra)})


def _aut(t):
    return Func("aut", (t,))


def describe_via_presentation(G, pres, closed: bool = True) -> DescriptionResult:
    """Sentence from a presentation of G (any G), see general_presentation_description."""
    from .builders import general_presentation_description

    pf = general_presentation_description(G, pres, closed=closed)
    return DescriptionResult(pf.formula, length_report(pf.formula),
                             {"order": G.order, "presentation": pres.name, "generators": list(pf.generators),
                              "images": list(pf.images or ())}, "presentation")


def render_slp(G) -> str:
    """Text dump of the preprocessing SLP used by describe_group(G)."""
    if G.order == 1:
        return ""
    series = composition_series(G)
    levels = series.gensets[1:]
    chain = preprocessing_chain(G, levels, subgroups=series.subgroups if not G.dense else None)
    return chain.slp.to_text()
