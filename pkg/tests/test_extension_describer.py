import itertools

import pytest

import oracles
from fgdesc.builders import log2
from fgdesc.catalog import enumerate_groups
from fgdesc.extension_describer import (CriterionResult, DescriberError, abelian_rank, big_omega,
                                        check_extension_criteria, distinguishing_words, phi_restricted,
                                        pin_down_subset, span_vectors)
from fgdesc.extensions import cyclic_extensions
from fgdesc.group import closure, cyclic, direct_product, symmetric
from fgdesc.iso import is_isomorphic
from fgdesc.logic.evaluate import evaluate
from fgdesc.logic.formula import Eq, Var
from fgdesc.logic.metrics import symbol_length
from fgdesc.logic.structures import group_structure
from fgdesc.pipeline import _Skeleton
from fgdesc.presentations import eval_word

# largest (|kappa| + |rho|) / log^3|G| over the catalog up to order 24, measured 1.625 (C4)
KAPPA_RHO_RATIO = 1.625


def by_label(n, label):
    return next(G for G in enumerate_groups(n).groups if G.label == label)


def cyclic_sub(G, order):
    x = next(a for a in G.elements if G.element_order(a) == order)
    return x, closure(G, [x])


# ---------------------------------------------------------------------------
# phi_E


def test_phi_d4():
    D4 = by_label(8, "D4")
    r, N = cyclic_sub(D4, 4)
    s = next(a for a in D4.elements if a not in N.members)
    phi = phi_restricted(D4, N, [s], m=1)
    assert phi[(1, 1)] == D4.identity
    assert phi[()] == D4.identity


def test_phi_q8():
    Q8 = by_label(8, "Q8")
    i, N = cyclic_sub(Q8, 4)
    j = next(a for a in Q8.elements if a not in N.members)
    phi = phi_restricted(Q8, N, [j], m=1)
    minus_one = next(a for a in N.elements if Q8.element_order(a) == 2)
    assert phi[(1, 1)] == minus_one


def test_phi_values_lie_in_n_and_multiply():
    S4 = symmetric(4)
    from fgdesc.series import composition_series

    s = composition_series(S4)
    N = closure(S4, s.subgroups[-2])
    lifts = s.factors[-1].new_gens
    phi = phi_restricted(S4, N, lifts)
    assert all(v in N.members for v in phi.values())
    for u, w in itertools.product(phi, repeat=2):
        if u + w in phi:
            assert phi[u + w] == S4.mul(phi[u], phi[w])


def test_phi_radius_check():
    D4 = by_label(8, "D4")
    _, N = cyclic_sub(D4, 2)
    with pytest.raises(DescriberError):
        phi_restricted(D4, N, [next(a for a in D4.elements if a not in N.members)], m=0)


# ---------------------------------------------------------------------------
# pin_down_subset


def test_pin_down_zero():
    A = cyclic(6)
    assert pin_down_subset(A, ["x1", "x2"], []) == []


def test_pin_down_c2_c3_is_optimal():
    A = direct_product(cyclic(2), cyclic(3))
    g1 = next(a for a in A.elements if A.element_order(a) == 2)
    g2 = next(a for a in A.elements if A.element_order(a) == 3)
    Y = pin_down_subset(A, ["x1", "x2"], [(g1, g2)])
    assert Y == ["x1", "x2"]
    # rank 1 times big omega(6) = 2
    assert abelian_rank(A) == 1 and big_omega(6) == 2


def test_pin_down_c4_squared():
    A = cyclic(4)
    g = next(a for a in A.elements if A.element_order(a) == 4)
    g2, e = A.mul(g, g), A.identity
    gens = [(g2, e), (e, g)]
    Y = pin_down_subset(A, [0, 1], gens)
    assert len(Y) <= 2
    V = span_vectors(A, gens)
    assert len(V) == 8
    for v in V:
        if all(v[i] == e for i in Y):
            assert all(x == e for x in v)


def test_pin_down_random_injective():
    import random

    rng = random.Random(3)
    for A in [cyclic(8), direct_product(cyclic(2), cyclic(4)), cyclic(12), direct_product(cyclic(3), cyclic(3))]:
        for _ in range(20):
            n = rng.randrange(1, 6)
            gens = [tuple(rng.randrange(A.order) for _ in range(n)) for _ in range(rng.randrange(1, 3))]
            Y = pin_down_subset(A, list(range(n)), gens)
            V = span_vectors(A, gens)
            rank = max(1, len(gens))
            assert len(Y) <= rank * big_omega(A.order)
            for v in V:
                if all(v[i] == A.identity for i in Y):
                    assert all(x == A.identity for x in v)


def test_pin_down_needs_abelian():
    with pytest.raises(DescriberError):
        pin_down_subset(symmetric(3), [0], [(1,)])


# ---------------------------------------------------------------------------
# distinguishing words


def test_words_c4_inversion():
    C4, C2 = cyclic(4), cyclic(2)
    inv = tuple(C4.inv(a) for a in C4.elements)
    rep = distinguishing_words(C4, C2, (1,), [inv])
    assert rep.words == [(1, 1)]
    vals = {}
    D4, Q8 = by_label(8, "D4"), by_label(8, "Q8")
    for ext in cyclic_extensions(C4, 2, inv):
        v = eval_word(ext.E, (1, 1), ext.lifts)
        if is_isomorphic(ext.E, D4):
            vals.setdefault("D4", set()).add(ext.E.element_order(v))
        elif is_isomorphic(ext.E, Q8):
            vals.setdefault("Q8", set()).add(ext.E.element_order(v))
    assert vals["Q8"] == {2}
    assert 1 in vals["D4"]


def test_words_centerless_kernel():
    S3, C2 = symmetric(3), cyclic(2)
    rep = distinguishing_words(S3, C2, (1,), [tuple(range(6))])
    assert rep.words == []


def test_words_c2_trivial_action():
    C2 = cyclic(2)
    rep = distinguishing_words(C2, C2, (1,), [(0, 1)])
    assert rep.words == [(1, 1)]
    exts = cyclic_extensions(C2, 2, (0, 1))
    vals = {is_isomorphic(e.E, cyclic(4)) is not None: eval_word(e.E, (1, 1), e.lifts) for e in exts}
    assert vals[True] != vals[False]


def test_words_report_json():
    C4 = cyclic(4)
    rep = distinguishing_words(C4, cyclic(2), (1,), [tuple(C4.inv(a) for a in C4.elements)], level=2)
    assert '"method": "oracle"' in rep.to_json()
    assert rep.rendered() == ["s^2"] or rep.rendered() == ["s s"]


@pytest.mark.slow
def test_extension_criteria_exhaustive_to_16():
    res = CriterionResult()
    for a in range(2, 9):
        for b in range(2, 9):
            if a * b > 16:
                continue
            for N in enumerate_groups(a):
                for H in enumerate_groups(b):
                    check_extension_criteria(N, H, budget=None, result=res)
    assert res.counterexamples == []
    assert res.skipped == []
    assert res.pairs == 36 and res.extension_pairs > 600000


# ---------------------------------------------------------------------------
# kappa and rho


def test_kappa_d4_conjugation():
    D4 = by_label(8, "D4")
    sk = _Skeleton(D4)
    T = sk.T
    r = next(t for t in T if D4.element_order(t) == 4)
    s = next(t for t in T if t not in closure(D4, [r]).members)
    t = oracles.table_of(D4)
    conj = t[t[oracles.inverse_of(t, s)][r]][s]
    assert conj == oracles.inverse_of(t, r)
    env = dict(zip(sk.t_names, T))
    env.update(zip(sk.a_names, sk.chain.A))
    M = group_structure(D4)
    level = next(i for i, f in enumerate(sk.series.factors, 1) if s in f.new_gens)
    assert sk.aword(level - 1, conj) is not None
    assert all(evaluate(k, M, env) for k in sk.parts["kappa"])
    rhs = [k.right for k in sk.parts["kappa"]
           if k.left.args[0].args[1] == sk.t_var[r] and k.left.args[1] == sk.t_var[s]]
    assert len(rhs) == 1
    assert evaluate(Eq(Var("h"), rhs[0]), M, {**env, "h": oracles.inverse_of(t, r)})


def test_kappa_abelian_is_commutation():
    G = direct_product(cyclic(2), cyclic(4))
    sk = _Skeleton(G)
    env = dict(zip(sk.t_names, sk.T))
    env.update(zip(sk.a_names, sk.chain.A))
    M = group_structure(G)
    for k in sk.parts["kappa"]:
        w = k.left.args[0].args[1]
        assert evaluate(k, M, env)
        assert evaluate(Eq(k.right, w), M, env)


def test_kappa_rho_length_catalog():
    worst = 0.0
    for n in range(2, 25):
        for G in enumerate_groups(n):
            sk = _Skeleton(G)
            size = sum(symbol_length(f) for f in sk.parts["kappa"] + sk.parts["rho"])
            worst = max(worst, size / log2(n) ** 3)
            assert size <= KAPPA_RHO_RATIO * log2(n) ** 3
    assert worst == KAPPA_RHO_RATIO
