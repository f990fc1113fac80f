import itertools

import pytest

import oracles
from fgdesc.builders import (BuilderError, alpha, beta, char_simple_sentence, chi, cyclic_sentence,
                             difference_field_sentence, field_constant_formula, field_sentence,
                             general_presentation_description, length_constants, log2, presentation_description,
                             theta)
from fgdesc.catalog import candidate_groups, enumerate_groups
from fgdesc.fields import FiniteField, product_ring_structure, zmod_structure
from fgdesc.group import cyclic, direct_product, symmetric, trivial_group
from fgdesc.logic.evaluate import evaluate
from fgdesc.logic.formula import Const, Eq, Exists, Not, V, iter_nodes
from fgdesc.logic.metrics import alternation, symbol_length
from fgdesc.logic.structures import group_structure, naturals_additive
from fgdesc.presentations import PresentationError, PresentationSpec, cyclic_presentation, lookup_presentation


def holds_on(f, G, env=None):
    return evaluate(f, group_structure(G), env)


def models_in(f, n):
    cat = candidate_groups(n)
    return [name for name, G in zip(cat.names(), cat.groups) if holds_on(f, G)]


# ---------------------------------------------------------------------------
# powers


def test_theta_additive():
    N = naturals_additive()
    f = theta(5, "g", "x")
    assert [gv for gv in range(10) if evaluate(f, N, {"g": gv, "x": 1})] == [5]


def test_theta_order_seven():
    C7 = cyclic(7)
    f = theta(7, "g", "x")
    for xv, gv in itertools.product(C7.elements, repeat=2):
        assert holds_on(f, C7, {"g": gv, "x": xv}) == (gv == C7.identity)


def test_theta_one_is_atom_and_zero_rejected():
    assert theta(1, "g", "x") == Eq(V("g"), V("x"))
    with pytest.raises(BuilderError):
        theta(0, "g", "x")


def test_chi_c5_generator():
    C5 = cyclic(5)
    xv = next(a for a in C5.elements if C5.element_order(a) == 5)
    f = chi(5, "g", "x")
    assert all(holds_on(f, C5, {"g": gv, "x": xv}) for gv in C5.elements)


def test_chi_identity_always():
    for G in enumerate_groups(6):
        f = chi(6, "g", "x")
        assert all(holds_on(f, G, {"g": G.identity, "x": xv}) for xv in G.elements)


def test_chi_c8_square_misses_generator():
    C8 = cyclic(8)
    gv = next(a for a in C8.elements if C8.element_order(a) == 8)
    xv = C8.mul(gv, gv)
    t = oracles.table_of(C8)
    assert not any(oracles.power(t, xv, r) == gv for r in range(8))
    assert not holds_on(chi(8, "g", "x"), C8, {"g": gv, "x": xv})


# ---------------------------------------------------------------------------
# generation


def test_alpha_s3():
    S3 = symmetric(3)
    ts = [a for a in S3.elements if S3.element_order(a) == 2][:2]
    c = next(a for a in S3.elements if S3.element_order(a) == 3)
    f = alpha(2, 6, "g", ["x1", "x2"])
    assert holds_on(f, S3, {"g": c, "x1": ts[0], "x2": ts[1]})


def test_alpha_identity_always():
    G = symmetric(3)
    f = alpha(1, 6, "g", ["x"])
    assert all(holds_on(f, G, {"g": G.identity, "x": xv}) for xv in G.elements)
    assert all(holds_on(beta(1, 6, "g", ["x"]), G, {"g": G.identity, "x": xv}) for xv in G.elements)


def test_alpha_c4_generator_not_in_square():
    C4 = cyclic(4)
    gv = next(a for a in C4.elements if C4.element_order(a) == 4)
    env = {"g": gv, "x": C4.mul(gv, gv)}
    assert not holds_on(alpha(1, 4, "g", ["x"]), C4, env)
    assert not evaluate(alpha(1, 4, "g", ["x"]), group_structure(C4), env, shortcuts=False)


def test_beta_shape():
    f = beta(2, 16, "g", ["x1", "x2"])
    assert alternation(f) == ("Σ", 1)
    assert not any(isinstance(n, Not) for n in iter_nodes(f))


# ---------------------------------------------------------------------------
# length bounds up to 2^20


def test_length_bounds_to_2_20():
    c = length_constants()
    for e in range(1, 21):
        for n in (2 ** e - 1, 2 ** e, 2 ** e + 1):
            assert symbol_length(theta(n, "g", "x")) <= c["theta"] * max(log2(n), 1)
    for v in (2, 17, 1000, 2 ** 20):
        for k in (1, 3, 5):
            xs = [f"x{i}" for i in range(k)]
            assert symbol_length(alpha(k, v, "g", xs)) <= c["alpha"] * (k + log2(v) + 1)
            s = log2(v)
            assert symbol_length(beta(k, v, "g", xs)) <= c["beta"] * (k * s + s * s)
    for q in (2, 3, 4, 8, 9, 25, 27, 128, 1024, 2 ** 20, 3 ** 12):
        assert symbol_length(field_sentence(q)) <= c["field"] * log2(q)


# ---------------------------------------------------------------------------
# cyclic groups


def test_cyclic_sentence_order_8():
    f = cyclic_sentence(2, 3)
    assert models_in(f, 8) == ["C8"]
    assert alternation(f) == ("Σ", 3)


def test_cyclic_sentence_prime():
    for p in (2, 3, 5, 7):
        assert holds_on(cyclic_sentence(p, 1), cyclic(p))


def test_cyclic_sentence_orders_up_to_16():
    for p, k in [(2, 2), (3, 2), (2, 4)]:
        n = p ** k
        assert models_in(cyclic_sentence(p, k), n) == [f"C{n}"]


def test_cyclic_sentence_rejects_composite():
    with pytest.raises(BuilderError):
        cyclic_sentence(4, 1)


# ---------------------------------------------------------------------------
# fields


def test_field_f4_vs_z4():
    f = field_sentence(4)
    assert evaluate(f, FiniteField(4).structure())
    assert not evaluate(f, zmod_structure(4))
    assert not evaluate(f, product_ring_structure(2, 2))


def test_prime_fields():
    for p in (2, 3, 5, 7):
        assert evaluate(field_sentence(p), FiniteField(p).structure())
        assert evaluate(field_sentence(p), zmod_structure(p))
    assert not evaluate(field_sentence(5), zmod_structure(7))


def test_field_sentence_excludes_subfields():
    # F_16 contains F_4; the sentence for 16 must still single out F_16
    assert evaluate(field_sentence(16), FiniteField(16).structure())
    assert not evaluate(field_sentence(4), FiniteField(16).structure())
    assert not evaluate(field_sentence(16), FiniteField(4).structure())


def test_field_constant_pins_frobenius_orbit():
    F = FiniteField(4)
    add, mul = F.tables()
    # test-side scan for the roots of t^2 + t + 1
    roots = {a for a in range(4) if add[add[mul[a][a]][a]][1] == 0}
    assert len(roots) == 2
    c = min(roots)
    assert mul[c][c] == add[c][1]
    f = field_constant_formula(4, c)
    M = F.structure()
    assert {a for a in range(4) if evaluate(f, M, {"c": a})} == roots


def test_difference_field():
    F = FiniteField(8)
    f = difference_field_sentence(8, 1)
    assert evaluate(f, F.structure(sigma_power=1))
    assert not evaluate(f, F.structure(sigma_power=2))


def test_field_rejects_non_prime_power():
    with pytest.raises(BuilderError):
        field_sentence(6)


# ---------------------------------------------------------------------------
# presentations


def test_a5_presentation_among_order_60():
    A5 = next(G for G in candidate_groups(60).groups if G.label == "A5")
    res = presentation_description(A5, lookup_presentation("A5"), closed=True)
    assert models_in(res.formula, 60) == ["A5"]


def test_presentation_has_nontrivial_first_generator():
    A5 = next(G for G in candidate_groups(60).groups if G.label == "A5")
    res = presentation_description(A5, lookup_presentation("A5"))
    body = res.formula.parts[0]
    assert body == Not(Eq(V("x1"), Const("e")))


def test_presentation_cyclic_prime_matches_cyclic_sentence():
    for p in (3, 5, 7):
        res = presentation_description(cyclic(p), cyclic_presentation(p), closed=True)
        assert holds_on(res.formula, cyclic(p)) and holds_on(cyclic_sentence(p, 1), cyclic(p))


def test_presentation_existential_variant():
    A5 = next(G for G in candidate_groups(60).groups if G.label == "A5")
    res = presentation_description(A5, lookup_presentation("A5"), existential=True, closed=True)
    assert models_in(res.formula, 60) == ["A5"]
    assert alternation(res.formula) == ("Σ", 3)


def test_presentation_wrong_group():
    with pytest.raises((BuilderError, PresentationError)):
        presentation_description(cyclic(5), cyclic_presentation(7))


def test_general_presentation_d4():
    D4 = next(G for G in enumerate_groups(8).groups if G.label == "D4")
    pres = PresentationSpec.from_strings("D4", ["r", "s"], ["r^4", "s^2", "(r s)^2"])
    f = general_presentation_description(D4, pres, closed=True).formula
    assert models_in(f, 8) == ["D4"]


def test_general_presentation_s4_coxeter():
    pres = PresentationSpec.from_strings("S4", ["a", "b", "c"],
                                         ["a^2", "b^2", "c^2", "(a b)^3", "(b c)^3", "(a c)^2"])
    f = general_presentation_description(symmetric(4), pres, closed=True).formula
    assert models_in(f, 24) == ["S4"]


def test_general_presentation_trivial():
    pres = PresentationSpec.from_strings("1", [], [])
    f = general_presentation_description(trivial_group(), pres).formula
    assert holds_on(f, trivial_group())
    assert not holds_on(f, cyclic(2))
    assert symbol_length(f) == 5  # forall g (g = e)


def test_general_presentation_tuple_is_pinned():
    # relators plus the chain fix the generator images up to automorphism
    D4 = next(G for G in enumerate_groups(8).groups if G.label == "D4")
    pres = PresentationSpec.from_strings("D4", ["r", "s"], ["r^4", "s^2", "(r s)^2"])
    res = general_presentation_description(D4, pres)
    M = group_structure(D4)
    sat = {(r, s) for r, s in itertools.product(D4.elements, repeat=2)
           if evaluate(res.formula, M, {"x1": r, "x2": s})}
    orbit = {(a[res.images[0]], a[res.images[1]]) for a in oracles.automorphisms(oracles.table_of(D4))}
    assert sat == orbit


# ---------------------------------------------------------------------------
# characteristically simple groups


def test_char_simple_c2_cubed():
    assert models_in(char_simple_sentence(cyclic(2), 3), 8) == ["C2^3"]


def test_char_simple_k1():
    for p in (2, 3, 5):
        f = char_simple_sentence(cyclic(p), 1)
        assert holds_on(f, cyclic(p))
    assert not holds_on(char_simple_sentence(cyclic(2), 1), cyclic(4))


def test_char_simple_c3_squared():
    f = char_simple_sentence(cyclic(3), 2)
    assert holds_on(f, direct_product(cyclic(3), cyclic(3)))
    assert not holds_on(f, cyclic(9))
    assert len(models_in(f, 9)) == 1


def test_char_simple_rejects_non_simple():
    with pytest.raises(BuilderError):
        char_simple_sentence(cyclic(4), 2)


def test_builders_do_not_capture_free_names():
    f = theta(6, "y1", "y2")
    assert isinstance(f, Exists)
    bound = []
    g = f
    while isinstance(g, Exists):
        bound.append(g.var)
        g = g.body
    assert "y1" not in bound and "y2" not in bound
