"""Finite (and a few infinite) structures for the evaluator."""
from __future__ import annotations

import json
from typing import Callable, Sequence


class SignatureMismatch(ValueError):
    pass


class Structure:
    """Domain {0..size-1} (size None: infinite, enumeration forbidden).

    ``functions`` maps a symbol to a table (list for unary, list of rows for
    binary) or a Python callable; ``relations`` maps a symbol to a set of
    argument tuples or a predicate.
    """

    def __init__(self, size: int | None, functions: dict, constants: dict, relations: dict | None = None,
                 label: str | None = None, group=None, signature: str = "group"):
        self.size = size
        self.constants = dict(constants)
        self.relations = dict(relations or {})
        self.label = label
        self.group = group
        self.signature = signature
        self.functions: dict[str, Callable] = {}
        self.tables: dict[str, object] = {}
        for name, f in functions.items():
            self.add_function(name, f)

    def add_function(self, name: str, f) -> None:
        if callable(f):
            self.functions[name] = f
            return
        table = [list(map(int, row)) if hasattr(row, "__len__") else int(row) for row in f]
        self.tables[name] = table
        if table and isinstance(table[0], list):
            self.functions[name] = lambda a, b, t=table: t[a][b]
        else:
            self.functions[name] = lambda a, t=table: t[a]

    @property
    def domain(self) -> range:
        if self.size is None:
            raise SignatureMismatch("cannot enumerate an infinite domain")
        return range(self.size)

    def __repr__(self) -> str:
        return f"Structure({self.label or '?'}, size={self.size}, sig={self.signature})"


def group_structure(G, predicate: Sequence[int] | None = None, automorphism: Sequence[int] | None = None,
                    label: str | None = None) -> Structure:
    rows = G.rows if hasattr(G, "rows") else None
    if rows is not None:
        functions = {"mul": rows, "inv": G.inv_list}
    else:
        functions = {"mul": G.mul, "inv": G.inv}
    sig = "group"
    relations = {}
    if predicate is not None:
        members = frozenset(int(x) for x in predicate)
        relations["P"] = members
        sig = "group-pred"
    if automorphism is not None:
        functions["aut"] = list(automorphism)
        sig = "group-aut"
    return Structure(G.order, functions, {"e": G.identity}, relations, label=label or G.label, group=G, signature=sig)


def ring_structure(add, mul, zero: int, one: int, sigma: Sequence[int] | None = None,
                   label: str | None = None) -> Structure:
    functions = {"add": add, "mul": mul}
    sig = "ring"
    if sigma is not None:
        functions["sigma"] = sigma
        sig = "ring-sigma"
    size = len(add)
    return Structure(size, functions, {"zero": zero, "one": one}, label=label, signature=sig)


def naturals_additive() -> Structure:
    """(N, +, 0) as a monoid with mul = addition; infinite."""
    return Structure(None, {"mul": lambda a, b: a + b}, {"e": 0}, label="(N,+,0)", signature="monoid")


def structure_from_json(data: dict) -> Structure:
    """{"signature": "group", "table": [[...]]} (optionally "P"/"aut"), or
    {"signature": "ring", "add": ..., "mul": ..., "zero": 0, "one": 1, "sigma": [...]}."""
    sig = data.get("signature", "group")
    if sig.startswith("group") or "table" in data or "permutations" in data:
        from ..group import group_from_json

        G = group_from_json(data)
        return group_structure(G, predicate=data.get("P"), automorphism=data.get("aut"), label=data.get("label"))
    if sig.startswith("ring"):
        return ring_structure(data["add"], data["mul"], data.get("zero", 0), data.get("one", 1),
                              data.get("sigma"), label=data.get("label"))
    raise SignatureMismatch(f"unknown structure signature {sig!r}")


def load_structure(path) -> Structure:
    with open(path) as fh:
        return structure_from_json(json.load(fh))
