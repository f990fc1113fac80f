import itertools
import json

import pytest

import oracles
from fgdesc.builders import BuilderError, field_sentence, cyclic_sentence, log2
from fgdesc.catalog import enumerate_groups
from fgdesc.fields import FiniteField, zmod_structure
from fgdesc.group import closure, cyclic, direct_product, symmetric, trivial_group
from fgdesc.interpretation import (identity_eta, identity_interpretation, interpretation_describe,
                                   quotient_interpretation)
from fgdesc.logic.evaluate import evaluate
from fgdesc.logic.metrics import alternation, symbol_length
from fgdesc.logic.sexpr import render
from fgdesc.logic.structures import group_structure
from fgdesc.pipeline import (describe_group, describe_sigma_bounded, describe_via_presentation,
                             describe_with_automorphism, describe_with_subgroup, describe_with_tuple, render_slp)
from fgdesc.presentations import PresentationSpec


def by_label(n, label):
    return next(G for G in enumerate_groups(n).groups if G.label == label)


def models(f, n):
    cat = enumerate_groups(n)
    return [name for name, G in zip(cat.names(), cat.groups) if evaluate(f, group_structure(G))]


# ---------------------------------------------------------------------------
# describe_group


def test_c2():
    res = describe_group(cyclic(2))
    assert models(res.formula, 2) == ["C2"]
    assert not res.free and res.mode == "full"


def test_q8_unique():
    assert models(describe_group(by_label(8, "Q8")).formula, 8) == ["Q8"]


def test_s4_unique():
    assert models(describe_group(symmetric(4)).formula, 24) == ["S4"]


def test_trivial_group():
    f = describe_group(trivial_group()).formula
    assert evaluate(f, group_structure(trivial_group()))
    assert not evaluate(f, group_structure(cyclic(2)))


def test_naive_agrees_on_order_8():
    # the sentence for C2 x C4, evaluated with and without the shortcut tags
    f = describe_group(by_label(8, "C2xC4")).formula
    for G in enumerate_groups(8):
        M = group_structure(G)
        assert evaluate(f, M) == evaluate(f, M, shortcuts=False) == (G.label == "C2xC4")


def test_metrics_and_provenance():
    res = describe_group(symmetric(4))
    assert res.check_metrics()
    prov = res.provenance
    assert prov["factors"] and prov["order"] == 24
    parts = sum(prov["conjuncts"].values())
    # the parts plus the "and"s joining them plus the quantifier prefix
    overhead = symbol_length(res.formula) - parts
    assert 0 <= overhead <= prov["conjunct_count"] + 2 * prov["prefix"]
    assert res.metrics.symbol_length <= 400 * log2(24) ** 3
    json.dumps(res.to_json())


def test_deterministic_rendering(tmp_path):
    a = render(describe_group(by_label(12, "A4")).formula)
    b = render(describe_group(by_label(12, "A4")).formula)
    assert a == b
    G = by_label(12, "A4")
    r1 = describe_group(G).write_bundle(tmp_path / "a", render_slp(G))
    r2 = describe_group(G).write_bundle(tmp_path / "b", render_slp(G))
    for p, q in zip(r1, r2):
        assert p.read_bytes() == q.read_bytes()
    assert (tmp_path / "a" / "slp.txt").exists()


# ---------------------------------------------------------------------------
# tuples


def _satisfying(f, n, names):
    out = {}
    for label, G in zip(enumerate_groups(n).names(), enumerate_groups(n).groups):
        M = group_structure(G)
        hits = [v for v in itertools.product(G.elements, repeat=len(names))
                if evaluate(f, M, dict(zip(names, v)))]
        if hits:
            out[label] = hits
    return out


def test_tuple_c4_square():
    C4 = by_label(4, "C4")
    g = next(a for a in C4.elements if C4.element_order(a) == 4)
    res = describe_with_tuple(C4, [C4.mul(g, g)])
    assert res.free == ("y1",)
    assert _satisfying(res.formula, 4, ["y1"]) == {"C4": [(C4.mul(g, g),)]}


def test_tuple_s3_three_cycle():
    S3 = by_label(6, "S3")
    c = next(a for a in S3.elements if S3.element_order(a) == 3)
    res = describe_with_tuple(S3, [c])
    orbit = {(a[c],) for a in oracles.automorphisms(oracles.table_of(S3))}
    assert _satisfying(res.formula, 6, ["y1"]) == {"S3": sorted(orbit)}


def test_tuple_d4_rotation_vs_reflection():
    D4 = by_label(8, "D4")
    r = next(a for a in D4.elements if D4.element_order(a) == 4)
    s = next(a for a in D4.elements if D4.element_order(a) == 2 and a not in closure(D4, [r]).members)
    auts = oracles.automorphisms(oracles.table_of(D4))
    f = describe_with_tuple(D4, [r]).formula
    sat = _satisfying(f, 8, ["y1"])
    assert set(sat) == {"D4"}
    assert set(sat["D4"]) == {(a[r],) for a in auts}
    assert (s,) not in sat["D4"]


def test_tuple_pair():
    D4 = by_label(8, "D4")
    r = next(a for a in D4.elements if D4.element_order(a) == 4)
    s = next(a for a in D4.elements if D4.element_order(a) == 2 and a not in closure(D4, [r]).members)
    f = describe_with_tuple(D4, [r, s]).formula
    auts = oracles.automorphisms(oracles.table_of(D4))
    assert set(_satisfying(f, 8, ["y1", "y2"])["D4"]) == {(a[r], a[s]) for a in auts}


def test_tuple_name_clash():
    with pytest.raises(BuilderError):
        describe_with_tuple(cyclic(4), [1], names=["t1"])


# ---------------------------------------------------------------------------
# subgroups and automorphisms


def _subgroups(G):
    t = oracles.table_of(G)
    return {frozenset(oracles.bfs_closure(t, [a, b])) for a in G.elements for b in G.elements}


def test_subgroup_c4():
    C4 = by_label(4, "C4")
    g = next(a for a in C4.elements if C4.element_order(a) == 4)
    half = [C4.identity, C4.mul(g, g)]
    f_half = describe_with_subgroup(C4, half).formula
    f_one = describe_with_subgroup(C4, [C4.identity]).formula
    for label, G in zip(enumerate_groups(4).names(), enumerate_groups(4).groups):
        for U in _subgroups(G):
            M = group_structure(G, predicate=U)
            assert evaluate(f_half, M) == (label == "C4" and len(U) == 2)
            assert evaluate(f_one, M) == (label == "C4" and len(U) == 1)


def test_subgroup_whole_group():
    S3 = symmetric(3)
    f = describe_with_subgroup(S3, S3.elements).formula
    for G in enumerate_groups(6):
        for U in _subgroups(G):
            assert evaluate(f, group_structure(G, predicate=U)) == (G.label == "S3" and len(U) == 6)


def test_subgroup_rejects_non_subgroup():
    with pytest.raises(BuilderError):
        describe_with_subgroup(cyclic(4), [0, 1])


def test_automorphism_klein():
    V = by_label(4, "C2^2")
    t = oracles.table_of(V)
    auts = oracles.automorphisms(t)
    ident = tuple(range(4))
    swap = next(a for a in auts if a != ident and all(a[a[x]] == x for x in range(4)))
    f_swap = describe_with_automorphism(V, swap).formula
    f_id = describe_with_automorphism(V, ident).formula
    for G in enumerate_groups(4):
        for a in oracles.automorphisms(oracles.table_of(G)):
            M = group_structure(G, automorphism=a)
            is_v = G.label == "C2^2"
            # (V, a) and (V, swap) are isomorphic iff a is conjugate to swap in Aut(V)
            conj = is_v and any(all(b[swap[x]] == a[b[x]] for x in range(4)) for b in auts)
            assert evaluate(f_swap, M) == conj
            assert evaluate(f_id, M) == (is_v and a == ident)


def test_automorphism_rejects_non_automorphism():
    with pytest.raises(BuilderError):
        describe_with_automorphism(cyclic(3), [0, 0, 0])


# ---------------------------------------------------------------------------
# bounded alternation


def test_sigma_q8():
    res = describe_sigma_bounded(by_label(8, "Q8"))
    assert res.mode == "sigma_bounded"
    assert models(res.formula, 8) == ["Q8"]


def test_sigma_c2():
    res = describe_sigma_bounded(cyclic(2))
    assert models(res.formula, 2) == ["C2"]
    assert alternation(res.formula)[1] <= 3


def test_sigma_alternation_constant():
    ranks = set()
    for n in range(2, 25):
        for G in enumerate_groups(n):
            ranks.add(alternation(describe_sigma_bounded(G).formula))
    assert ranks == {("Σ", 3)}


def test_full_variant_alternation_grows():
    assert alternation(describe_group(by_label(8, "Q8")).formula)[1] > 3


# ---------------------------------------------------------------------------
# presentations


D4_PRES = PresentationSpec.from_strings("D4", ["r", "s"], ["r^4", "s^2", "(r s)^2"])
S4_PRES = PresentationSpec.from_strings("S4", ["a", "b", "c"], ["a^2", "b^2", "c^2", "(a b)^3", "(b c)^3", "(a c)^2"])


def test_presentation_path_d4():
    res = describe_via_presentation(by_label(8, "D4"), D4_PRES)
    assert res.mode == "presentation"
    assert models(res.formula, 8) == ["D4"]


def test_presentation_path_s4():
    assert models(describe_via_presentation(symmetric(4), S4_PRES).formula, 24) == ["S4"]


def test_presentation_path_trivial():
    res = describe_via_presentation(trivial_group(), PresentationSpec.from_strings("1", [], []))
    assert evaluate(res.formula, group_structure(trivial_group()))
    assert not evaluate(res.formula, group_structure(cyclic(3)))


def test_presentation_path_open_tuple():
    res = describe_via_presentation(by_label(8, "D4"), D4_PRES, closed=False)
    assert res.free == ("x1", "x2")


# ---------------------------------------------------------------------------
# interpretations


def test_identity_interpretation_field():
    phi = field_sentence(4)
    res = interpretation_describe(identity_interpretation("ring"), identity_interpretation("ring"), identity_eta, phi)
    assert res.mode == "interpretation"
    assert evaluate(res.formula, FiniteField(4).structure())
    assert not evaluate(res.formula, zmod_structure(4))
    # the identity schemes add no alternation
    assert alternation(res.formula) == alternation(phi)


def test_quotient_interpretation_c2():
    phi = cyclic_sentence(2, 1)
    res = interpretation_describe(quotient_interpretation(), None, None, phi)
    C4 = by_label(4, "C4")
    g = next(a for a in C4.elements if C4.element_order(a) == 4)
    assert evaluate(res.formula, group_structure(C4, predicate=[C4.identity, C4.mul(g, g)]))
    assert not evaluate(res.formula, group_structure(C4, predicate=[C4.identity]))
    assert not evaluate(res.formula, group_structure(C4, predicate=C4.elements))
    # G/N has order 2 exactly when |N| = |G| / 2, over every normal N
    for G in enumerate_groups(8):
        t = oracles.table_of(G)
        for N in _subgroups(G):
            if oracles.is_normal(t, N):
                assert evaluate(res.formula, group_structure(G, predicate=N)) == (len(N) == 4)
    assert alternation(res.formula) == alternation(phi)
