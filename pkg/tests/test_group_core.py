import itertools
import json

import numpy as np
import pytest

import oracles
from fgdesc.catalog import build_construction, enumerate_groups, expected_count
from fgdesc.extensions import BudgetExceeded, cyclic_extensions, enumerate_extensions, extend_action
from fgdesc.group import (CyclicFamily, DihedralFamily, ElementaryAbelian2Family, FiniteGroup, GroupError,
                          alternating, center, center_and_centralizers, closure, cyclic, dicyclic, dihedral,
                          direct_product, from_permutations, group_from_json, is_simple, normal_subgroups,
                          quotient, symmetric, trivial_group)
from fgdesc.iso import automorphisms, is_automorphism, is_isomorphic
from fgdesc.series import check_series, composition_series


def by_label(n, label):
    return next(G for G in enumerate_groups(n).groups if G.label == label)


# ---------------------------------------------------------------------------
# tables


def test_table_checks_reject_non_groups():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])
    # Latin but not associative (a loop of order 5)
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError):
        FiniteGroup(loop)


def test_identity_and_inverses_consistent():
    for n in (6, 8, 12):
        for G in enumerate_groups(n):
            for a in G.elements:
                assert G.mul(a, G.inv(a)) == G.identity == G.mul(G.inv(a), a)


def test_permutation_input_expands_to_table():
    G = from_permutations(["(1 2)", "(1 2 3)"], 3)
    assert G.order == 6 and not G.is_abelian()
    H = group_from_json({"permutations": ["(1 2 3 4)", "(1 2)"], "degree": 4})
    assert H.order == 24
    assert group_from_json(json.loads(json.dumps(H.to_json()))).order == 24


# ---------------------------------------------------------------------------
# closure, centers, quotients


def test_closure_s3_transpositions():
    S3 = symmetric(3)
    ts = [g for g in S3.elements if S3.element_order(g) == 2][:2]
    assert closure(S3, ts).elements == tuple(range(6))


def test_closure_empty_is_identity():
    for G in (cyclic(5), symmetric(3), trivial_group()):
        assert closure(G, []).elements == (G.identity,)


def test_closure_c6_square():
    C6 = cyclic(6)
    g = next(x for x in C6.elements if C6.element_order(x) == 6)
    g2 = C6.mul(g, g)
    expect = oracles.bfs_closure(oracles.table_of(C6), [g2])
    assert set(closure(C6, [g2]).elements) == expect
    assert len(expect) == 3


def test_closure_words_are_products():
    G = symmetric(4)
    gens = [1, 5]
    H, words = closure(G, gens, words=True)
    for x, w in words.items():
        y = G.identity
        for j in w:
            y = G.mul(y, gens[j])
        assert y == x


def test_closure_matches_bfs_oracle_up_to_24():
    rng = np.random.default_rng(7)
    for n in range(1, 25):
        for G in enumerate_groups(n):
            t = oracles.table_of(G)
            for _ in range(4):
                S = [int(x) for x in rng.integers(0, n, size=int(rng.integers(0, 3)))]
                assert set(closure(G, S).elements) == oracles.bfs_closure(t, S)


def test_centers():
    Q8 = by_label(8, "Q8")
    Z = center_and_centralizers(Q8, Q8.elements)
    assert Z.order == 2
    assert set(Z.elements) == oracles.center(oracles.table_of(Q8))
    assert center(cyclic(7)).order == 7
    assert center(symmetric(3)).order == 1


def test_quotients():
    D4 = by_label(8, "D4")
    Q, proj = quotient(D4, center(D4))
    assert Q.order == 4 and all(Q.element_order(x) <= 2 for x in Q.elements)
    assert is_isomorphic(Q, direct_product(cyclic(2), cyclic(2)))
    # projection is a homomorphism
    assert all(proj[D4.mul(a, b)] == Q.mul(proj[a], proj[b]) for a in D4.elements for b in D4.elements)
    Qt, _ = quotient(D4, D4.elements)
    assert Qt.order == 1
    C6 = cyclic(6)
    C3 = [x for x in C6.elements if C6.power(x, 3) == C6.identity]
    Q2, _ = quotient(C6, C3)
    assert Q2.order == 2
    oracle = oracles.coset_quotient(oracles.table_of(C6), C3)
    assert is_isomorphic(Q2, FiniteGroup(oracle))


def test_quotient_rejects_non_normal():
    S3 = symmetric(3)
    t = next(g for g in S3.elements if S3.element_order(g) == 2)
    with pytest.raises(GroupError):
        quotient(S3, [S3.identity, t])


def test_normal_subgroups_match_scan():
    for G in [symmetric(4), by_label(8, "D4"), by_label(12, "A4")]:
        t = oracles.table_of(G)
        subs = {frozenset(oracles.bfs_closure(t, [a, b])) for a in G.elements for b in G.elements}
        normal = {N for N in subs if oracles.is_normal(t, N)}
        assert {frozenset(N.elements) for N in normal_subgroups(G)} == normal


# ---------------------------------------------------------------------------
# composition series


def test_series_s4():
    s = composition_series(symmetric(4))
    assert sorted(f.order for f in s.factors) == [2, 2, 2, 3]
    assert s.length == 4
    check_series(s)


def test_series_prime_and_a5():
    s = composition_series(cyclic(7))
    assert [f.order for f in s.factors] == [7]
    s = composition_series(alternating(5))
    assert s.length == 1 and s.factors[0].kind == "nonabelian"
    assert is_simple(alternating(5))


def test_series_invariants_catalog():
    from fgdesc.builders import log2

    for n in range(1, 25):
        for G in enumerate_groups(n):
            s = composition_series(G)
            check_series(s)
            assert int(np.prod([f.order for f in s.factors])) == n
            assert s.length <= log2(n)
            for i in range(1, s.length + 1):
                Q, _ = quotient(G, s.subgroups[i - 1], s.subgroups[i])
                t = oracles.table_of(Q)
                normals = [N for N in map(frozenset, {frozenset(oracles.bfs_closure(t, [a])) for a in Q.elements})
                           if oracles.is_normal(t, N)]
                # simple: every normal cyclic subgroup is trivial or everything
                assert all(len(N) in (1, Q.order) for N in normals) or Q.order > 60


def test_series_deterministic():
    a = composition_series(symmetric(4))
    b = composition_series(symmetric(4))
    assert a.subgroups == b.subgroups and a.gensets == b.gensets


# ---------------------------------------------------------------------------
# isomorphism


def test_iso_examples():
    assert is_isomorphic(cyclic(4), direct_product(cyclic(2), cyclic(2))) is None
    S3 = symmetric(3)
    phi = is_isomorphic(S3, S3)
    assert phi is not None
    D6 = dihedral(6)
    C2S3 = direct_product(cyclic(2), S3)
    phi = is_isomorphic(D6, C2S3)
    assert phi is not None
    assert oracles.brute_iso(oracles.table_of(D6), oracles.table_of(C2S3)) is not None
    assert all(phi[D6.mul(a, b)] == C2S3.mul(phi[a], phi[b]) for a in D6.elements for b in D6.elements)


def test_automorphism_counts():
    for G, k in [(cyclic(8), 4), (direct_product(cyclic(2), cyclic(2)), 6), (by_label(8, "Q8"), 24),
                 (symmetric(3), 6)]:
        auts = automorphisms(G)
        assert len(auts) == k == len(oracles.automorphisms(oracles.table_of(G)))
        assert all(is_automorphism(G, a) for a in auts)


# ---------------------------------------------------------------------------
# catalogs


@pytest.mark.parametrize("n", range(1, 9))
def test_catalog_counts_match_table_backtracking(n):
    cat = enumerate_groups(n)
    assert cat.complete
    assert len(cat) == len(oracles.latin_square_groups(n))


def test_catalog_order_8_and_prime():
    assert len(enumerate_groups(8)) == 5
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23):
        assert len(enumerate_groups(p)) == 1


@pytest.mark.slow
@pytest.mark.parametrize("n", range(9, 25))
def test_catalog_closed_under_cyclic_extensions(n):
    """Every group below order 60 extends a group of order n/p by C_p, so the
    catalog must contain every such extension (computed test-side)."""
    cat = enumerate_groups(n)
    assert cat.complete and len(cat) == expected_count(n)
    tables = [oracles.table_of(G) for G in cat]
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % d for d in range(2, p))]
    for p in primes:
        for N in enumerate_groups(n // p):
            for ext in oracles.cyclic_extension_tables(oracles.table_of(N), p):
                assert any(oracles.brute_iso(ext, t) is not None for t in tables if len(t) == len(ext))


def test_catalog_16_count():
    assert len(enumerate_groups(16)) == 14


def test_catalog_pairwise_distinct():
    for n in (8, 12, 16, 24):
        gs = enumerate_groups(n).groups
        for G, H in itertools.combinations(gs, 2):
            assert is_isomorphic(G, H) is None


def test_catalog_bound():
    with pytest.raises(GroupError):
        enumerate_groups(25)


def test_constructions():
    assert is_isomorphic(build_construction("Dic(2)"), by_label(8, "Q8"))
    assert build_construction("C(2) x C(3)").order == 6
    assert dicyclic(3).order == 12


# ---------------------------------------------------------------------------
# extensions


def test_extensions_c4_by_c2_inversion():
    C4 = cyclic(4)
    inv = tuple(C4.inv(a) for a in C4.elements)
    exts = enumerate_extensions(C4, cyclic(2), [tuple(range(4)), inv])
    D4, Q8 = by_label(8, "D4"), by_label(8, "Q8")
    assert any(is_isomorphic(e.E, D4) for e in exts)
    assert any(is_isomorphic(e.E, Q8) for e in exts)


def test_extensions_c2_by_c2_trivial():
    C2 = cyclic(2)
    exts = enumerate_extensions(C2, cyclic(2), [(0, 1), (0, 1)])
    kinds = {is_isomorphic(e.E, cyclic(4)) is not None for e in exts}
    assert kinds == {True, False}


def test_extensions_centerless_kernel_unique():
    S3 = symmetric(3)
    for a in automorphisms(S3)[:3]:
        acts = extend_action(S3, cyclic(2), (1,), [a])
        try:
            exts = enumerate_extensions(S3, cyclic(2), acts)
        except GroupError:
            continue
        assert len(exts) <= 1


def test_extensions_quotient_and_action():
    C4 = cyclic(4)
    inv = tuple(C4.inv(a) for a in C4.elements)
    for e in cyclic_extensions(C4, 2, inv):
        E = e.E
        Q, proj = quotient(E, e.N.elements)
        assert Q.order == 2
        s = e.lifts[0]
        emb = list(e.N.elements)
        for i, a in enumerate(emb):
            assert E.mul(E.mul(E.inv(s), a), s) == emb[e.action[0][i]]


def test_extension_budget():
    N = direct_product(cyclic(2), cyclic(2))
    H = symmetric(3)
    ident = [tuple(range(4))] * 6
    with pytest.raises(BudgetExceeded):
        enumerate_extensions(N, H, ident, budget=10)


def test_implicit_families_agree_with_tables():
    for fam, dense in [(CyclicFamily(12), cyclic(12)), (ElementaryAbelian2Family(3), None),
                       (DihedralFamily(4), dihedral(4))]:
        D = fam.to_dense()
        if dense is not None:
            assert is_isomorphic(D, dense)
        assert closure(fam, [1]).order == closure(D, [1]).order
