"""Certify that a sentence describes a group against a complete catalog."""
from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources

from . import __version__
from .catalog import GroupCatalog, candidate_groups
from .group import GroupError
from .logic.evaluate import evaluate, failing_conjunct
from .logic.metrics import length_report
from .logic.structures import group_structure

VERDICTS = ("describes", "fails", "incomplete-catalog")
NAIVE_MAX_ORDER = 8


class VerificationError(GroupError):
    pass


class CrossCheckMismatch(AssertionError):
    pass


def config_hash() -> str:
    raw = resources.files("fgdesc.data").joinpath("config.toml").read_bytes()
    return hashlib.sha256(raw).hexdigest()[:12]


@dataclass
class VerificationReport:
    target: str
    order: int
    metrics: dict
    satisfied_by_target: bool
    rejected: list = field(default_factory=list)   # (candidate id, failure mode)
    accepted: list = field(default_factory=list)   # candidates other than the target that satisfy
    catalog_complete: bool = True
    cross_checked: int = 0
    verdict: str = "fails"
    version: str = __version__
    config: str = ""

    def to_json(self) -> str:
        d = asdict(self)
        d["rejected"] = [list(r) for r in self.rejected]
        return json.dumps(d, indent=2, sort_keys=True)

    @property
    def exit_code(self) -> int:
        return {"describes": 0, "fails": 1, "incomplete-catalog": 2}[self.verdict]


def _failure_mode(phi, M) -> str:
    idx = failing_conjunct(phi, M)
    if idx is None:
        return "no witness for the outer block"
    return f"conjunct {idx} false"


def _check_one(args):
    phi, H, naive = args
    M = group_structure(H)
    ok = evaluate(phi, M)
    if naive and evaluate(phi, M, shortcuts=False) != ok:
        raise CrossCheckMismatch(f"shortcut and naive evaluation disagree on {H.label}")
    return ok, (None if ok else _failure_mode(phi, M))


def verify_describes(phi, G, catalog: GroupCatalog | None = None, naive_max_order: int = NAIVE_MAX_ORDER,
                     workers: int = 1) -> VerificationReport:
    """Evaluate phi on G and on every catalog group of the same order.

    Groups up to ``naive_max_order`` are evaluated a second time with the
    shortcut tags ignored; any disagreement raises.
    """
    catalog = catalog if catalog is not None else candidate_groups(G.order)
    if catalog.order != G.order:
        raise VerificationError(f"catalog order {catalog.order} does not match |G| = {G.order}")
    names = catalog.names()
    idx = catalog.find(G)
    target = names[idx] if idx is not None else (G.label or f"G{G.order}")
    naive = G.order <= naive_max_order
    others = [(names[i], H) for i, H in enumerate(catalog.groups) if i != idx]
    jobs = [(phi, G, naive)] + [(phi, H, naive) for _, H in others]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_check_one, jobs))
    else:
        results = [_check_one(j) for j in jobs]
    sat = results[0][0]
    rep = VerificationReport(target, G.order, length_report(phi).as_dict(), sat,
                             catalog_complete=catalog.complete, cross_checked=len(jobs) if naive else 0,
                             config=config_hash())
    for (name, H), (ok, mode) in zip(others, results[1:]):
        if ok:
            rep.accepted.append(name)
        else:
            rep.rejected.append((name, mode))
    if not sat or rep.accepted:
        rep.verdict = "fails"
    elif not catalog.complete or idx is None:
        rep.verdict = "incomplete-catalog"
    else:
        rep.verdict = "describes"
    return rep
