"""Brute-force enumeration of group extensions of N by H.

E is realized on N x H: index h*|N| + a stands for a*l(h), where l is a fixed
lift with l(1) = 1. With psi_h(b) = l(h) b l(h)^-1 and the factor set
f(h, k) = l(h) l(k) l(hk)^-1 the product is

    (a l(h)) (b l(k)) = a psi_h(b) f(h, k) l(hk).

Callers pass the action as right conjugation a -> l(h)^-1 a l(h), the
convention used by the describer; it is inverted internally.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .group import FiniteGroup, GroupError, Subgroup, center

EXTENSION_BUDGET = 10 ** 7


class BudgetExceeded(GroupError):
    pass


@dataclass
class ExtensionData:
    E: FiniteGroup
    N: Subgroup
    lifts: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]  # per lift: a -> lift^-1 a lift, indexed by N position
    phi: dict = field(default_factory=dict)
    cocycle: tuple = ()

    @property
    def kernel_order(self) -> int:
        return self.N.order


def _invert_perm(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _compose(p, q):
    """p then q."""
    return tuple(q[x] for x in p)


def _conj_left(N, n):
    ni = N.inv(n)
    return tuple(N.mul(N.mul(n, b), ni) for b in range(N.order))


def _check_aut(N, perm) -> None:
    if sorted(perm) != list(range(N.order)):
        raise GroupError("action is not a permutation of N")
    for a in range(N.order):
        for b in range(N.order):
            if perm[N.mul(a, b)] != N.mul(perm[a], perm[b]):
                raise GroupError("action is not an automorphism of N")


def _build(N, H, psi, f) -> FiniteGroup:
    n, m = N.order, H.order
    table = []
    for h in range(m):
        ph = psi[h]
        for a in range(n):
            row = []
            for k in range(m):
                hk = H.mul(h, k)
                fk = f[h][k]
                base = hk * n
                for b in range(n):
                    row.append(base + N.mul(N.mul(a, ph[b]), fk))
            table.append(row)
    return FiniteGroup(table, check=False)


def _data(E, N, H, gens_h, cocycle) -> ExtensionData:
    n = N.order
    sub = Subgroup(E, tuple(range(n)))
    lifts = tuple(h * n for h in gens_h)
    action = tuple(tuple(E.mul(E.mul(E.inv(t), a), t) for a in range(n)) for t in lifts)
    return ExtensionData(E, sub, lifts, action, cocycle=cocycle)


def cyclic_extensions(N: FiniteGroup, p: int, action: Sequence[int]) -> list[ExtensionData]:
    """All extensions of N by C_p whose generator lift acts by ``action`` (right conjugation).

    With alpha the left action, a lift s with s^p = n0 exists exactly when
    alpha(n0) = n0 and alpha^p is conjugation by n0. The factor set is
    f(s^i, s^j) = n0 if i + j >= p else 1.
    """
    beta = tuple(action)
    _check_aut(N, beta)
    alpha = _invert_perm(beta)
    ap = tuple(range(N.order))
    for _ in range(p):
        ap = _compose(ap, alpha)
    from .group import cyclic

    H = cyclic(p)
    psi = [tuple(range(N.order))]
    for _ in range(1, p):
        psi.append(_compose(psi[-1], alpha))
    out = []
    for n0 in range(N.order):
        if alpha[n0] != n0 or _conj_left(N, n0) != ap:
            continue
        f = [[n0 if i + j >= p else N.identity for j in range(p)] for i in range(p)]
        E = _build(N, H, psi, f)
        out.append(_data(E, N, H, (1,), (n0,)))
    return out


def extension_search_size(N: FiniteGroup, H: FiniteGroup) -> int:
    """Candidate count of the normalized factor-set search: |Z(N)|^((|H|-1)^2)."""
    return center(N).order ** ((H.order - 1) ** 2)


def enumerate_extensions(N: FiniteGroup, H: FiniteGroup, action: Sequence[Sequence[int]],
                         gens: Sequence[int] | None = None, budget: int = EXTENSION_BUDGET) -> list[ExtensionData]:
    """All normalized factor sets compatible with the H-indexed action.

    ``action[h]`` is a -> l(h)^-1 a l(h). Each f(h, k) is confined to the
    Z(N)-coset of elements inducing psi_h psi_k psi_hk^-1, then the cocycle
    identity f(h,k) f(hk,l) = psi_h(f(k,l)) f(h,kl) is checked by backtracking.
    Lifts in the result are l(g) for g in ``gens`` (default: every nonidentity h).
    """
    m = H.order
    if len(action) != m:
        raise GroupError("action must list one automorphism per element of H")
    for perm in action:
        _check_aut(N, tuple(perm))
    if tuple(action[H.identity]) != tuple(range(N.order)):
        raise GroupError("the identity of H must act trivially")
    size = extension_search_size(N, H)
    if size > budget:
        raise BudgetExceeded(f"factor-set search of size {size} exceeds budget {budget}")
    psi = [_invert_perm(tuple(b)) for b in action]
    conj = {}
    for x in range(N.order):
        conj.setdefault(_conj_left(N, x), []).append(x)
    cells = [(h, k) for h in range(1, m) for k in range(1, m)]
    cands = {}
    for h, k in cells:
        target = _compose(_compose(_invert_perm(psi[H.mul(h, k)]), psi[k]), psi[h])
        # psi_h psi_k psi_hk^-1 as a map b -> psi_h(psi_k(psi_hk^-1(b)))
        cands[(h, k)] = conj.get(target, [])
        if not cands[(h, k)]:
            return []
    f = [[N.identity] * m for _ in range(m)]
    known = [[h == 0 or k == 0 for k in range(m)] for h in range(m)]

    def consistent(h, k):
        # every cocycle identity that involves the new cell and is fully known
        for a in range(1, m):
            for b in range(1, m):
                for c in range(1, m):
                    ab, bc = H.mul(a, b), H.mul(b, c)
                    used = ((a, b), (ab, c), (b, c), (a, bc))
                    if (h, k) not in used or not all(known[x][y] for x, y in used):
                        continue
                    lhs = N.mul(f[a][b], f[ab][c])
                    rhs = N.mul(psi[a][f[b][c]], f[a][bc])
                    if lhs != rhs:
                        return False
        return True

    found = []

    def rec(i):
        if i == len(cells):
            found.append(tuple(tuple(r) for r in f))
            return
        h, k = cells[i]
        for x in cands[(h, k)]:
            f[h][k] = x
            known[h][k] = True
            if consistent(h, k):
                rec(i + 1)
            known[h][k] = False
        f[h][k] = N.identity

    rec(0)
    gens_h = tuple(gens) if gens is not None else tuple(range(1, m))
    out = []
    for fs in found:
        E = _build(N, H, psi, fs)
        out.append(_data(E, N, H, gens_h, fs))
    return out


def extend_action(N: FiniteGroup, H: FiniteGroup, gens: Sequence[int], gen_action: Sequence[Sequence[int]]):
    """H-indexed right actions from generator actions, using shortest-word lifts.

    The result is a valid input for enumerate_extensions whenever the generator
    actions come from some extension; lifts of non-generators are the products
    along a BFS tree.
    """
    from .group import closure

    _, words = closure(H, gens, words=True)
    out = []
    for h in range(H.order):
        perm = tuple(range(N.order))
        for j in words[h]:
            perm = _compose(perm, tuple(gen_action[j]))  # right action: first letter first
        out.append(perm)
    return out
