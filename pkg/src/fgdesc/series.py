"""Composition series with the generating sets T_i used by the describer."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .group import GroupError, closure, normal_subgroups, quotient
from .presentations import PresentationSpec, cyclic_presentation, find_generator_images, simple_presentations


class UnresolvableFactor(GroupError):
    pass


@dataclass
class Factor:
    kind: str  # "cyclic" or "nonabelian"
    order: int
    presentation: PresentationSpec
    new_gens: tuple[int, ...]  # lifts in G of the factor's generators

    @property
    def prime(self) -> int | None:
        return self.order if self.kind == "cyclic" else None


@dataclass
class CompositionSeries:
    """1 = G_0 < G_1 < ... < G_r = G with T_i generating G_i and T_{i-1} inside T_i."""

    group: object
    subgroups: list[tuple[int, ...]]
    factors: list[Factor] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.factors)

    @property
    def gensets(self) -> list[tuple[int, ...]]:
        out = [()]
        for f in self.factors:
            out.append(out[-1] + f.new_gens)
        return out

    def factor_names(self) -> list[str]:
        return [f.presentation.name for f in self.factors]


def _maximal_normal(G, pool: tuple[int, ...]) -> tuple[int, ...]:
    proper = [N for N in normal_subgroups(G, pool) if N.order < len(pool)]
    maximal = [N for N in proper if not any(N.order < M.order and N.members <= M.members for M in proper)]
    return min((N.elements for N in maximal), key=lambda e: (-len(e), e))


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def composition_series(G) -> CompositionSeries:
    """Descend by maximal normal subgroups (largest, then lexicographically least).

    Cyclic factors get one generator: the least element of G_i outside G_{i-1}.
    Nonabelian factors get lifts of the catalog generators.
    """
    if not G.dense:
        return _implicit_series(G)
    chain = [tuple(G.elements)]
    while len(chain[-1]) > 1:
        cur = chain[-1]
        if _is_prime(len(cur)):
            chain.append((G.identity,))
        else:
            chain.append(_maximal_normal(G, cur))
    chain.reverse()
    series = CompositionSeries(G, chain)
    for lower, upper in zip(chain, chain[1:]):
        idx = len(upper) // len(lower)
        low = set(lower)
        if _is_prime(idx):
            t = min(g for g in upper if g not in low)
            series.factors.append(Factor("cyclic", idx, cyclic_presentation(idx), (t,)))
            continue
        Q, proj = quotient(G, lower, upper)
        for pres in simple_presentations(idx):
            images = find_generator_images(Q, pres)
            if images is not None:
                lifts = tuple(min(g for g in upper if proj[g] == q) for q in images)
                series.factors.append(Factor("nonabelian", idx, pres, lifts))
                break
        else:
            raise UnresolvableFactor(f"simple factor of order {idx} has no catalog presentation")
    return series


def _implicit_series(G) -> CompositionSeries:
    chain = [tuple(int(x) for x in c) for c in G.composition_chain()]
    series = CompositionSeries(G, chain)
    for lower, upper in zip(chain, chain[1:]):
        idx = len(upper) // len(lower)
        if not _is_prime(idx):
            raise GroupError("implicit families only carry solvable chains")
        t = int(np.setdiff1d(np.asarray(upper), np.asarray(lower))[0])
        series.factors.append(Factor("cyclic", idx, cyclic_presentation(idx), (t,)))
    return series


def factor_group(series: CompositionSeries, i: int):
    """H_i = G_i / G_{i-1} (1-based level) with the projection."""
    G = series.group
    return quotient(G, series.subgroups[i - 1], series.subgroups[i])


def check_series(series: CompositionSeries) -> None:
    """Raise if the series or its generating sets are inconsistent."""
    G = series.group
    for i, gens in enumerate(series.gensets):
        if closure(G, gens).elements != tuple(sorted(series.subgroups[i])):
            raise GroupError(f"T_{i} does not generate G_{i}")
    for i in range(1, len(series.subgroups)):
        lower = set(series.subgroups[i - 1])
        for g in series.subgroups[i]:
            gi = G.inv(g)
            if any(G.mul(G.mul(gi, n), g) not in lower for n in lower):
                raise GroupError(f"G_{i - 1} is not normal in G_{i}")
