"""Command-line entry point: fgdesc describe | verify | catalog | eval | scaling | bound."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__

log = logging.getLogger("fgdesc")

EXIT_OK, EXIT_FAILS, EXIT_INCOMPLETE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load_mapping(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise InputError(f"no such file: {path}")
    text = path.read_text()
    try:
        if path.suffix == ".toml":
            try:
                import tomllib
            except ModuleNotFoundError:  # Python < 3.11
                import tomli as tomllib
            return tomllib.loads(text)
        return json.loads(text)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_group_file(path):
    """Group from JSON or TOML: a 'table', 'permutations' with 'degree', or a 'construction'."""
    from .catalog import build_construction
    from .group import group_from_json

    data = _load_mapping(path)
    if "construction" in data:
        G = build_construction(data["construction"])
        if data.get("label"):
            G.label = data["label"]
        return G
    return group_from_json(data)


def load_presentation_file(path):
    from .presentations import PresentationSpec

    data = _load_mapping(path)
    try:
        return PresentationSpec.from_strings(data.get("name", Path(path).stem), data["generators"], data["relators"])
    except KeyError as exc:
        raise InputError(f"{path}: presentation needs {exc}") from None


def load_structure_file(path):
    from .logic.structures import structure_from_json

    return structure_from_json(_load_mapping(path))


# ---------------------------------------------------------------------------
# subcommands


def cmd_describe(args) -> int:
    from .pipeline import describe_group, describe_sigma_bounded, describe_via_presentation, render_slp

    G = load_group_file(args.input)
    if args.mode == "presentation":
        if not args.presentation:
            raise InputError("--mode presentation needs --presentation FILE")
        res = describe_via_presentation(G, load_presentation_file(args.presentation))
    elif args.mode == "sigma":
        res = describe_sigma_bounded(G)
    else:
        res = describe_group(G)
    slp = render_slp(G) if args.slp and args.mode != "presentation" else None
    paths = res.write_bundle(args.out, slp)
    m = res.metrics
    print(f"order {G.order}: length {m.symbol_length}, binary {m.binary_length}, "
          f"{m.alternation[0]}{m.alternation[1]}")
    for p in paths:
        print(f"wrote {p}")
    return EXIT_OK


def _read_sentence(path):
    from .logic.sexpr import parse_with_signature

    path = Path(path)
    if not path.exists():
        raise InputError(f"no such file: {path}")
    return parse_with_signature(path.read_text())


def cmd_verify(args) -> int:
    from .catalog import candidate_groups
    from .verify import verify_describes

    phi, _ = _read_sentence(args.sentence)
    G = load_group_file(args.group)
    n = args.catalog_order if args.catalog_order is not None else G.order
    if n != G.order:
        raise InputError(f"--catalog-order {n} does not match |G| = {G.order}")
    rep = verify_describes(phi, G, candidate_groups(n), workers=args.workers)
    text = rep.to_json()
    if args.report:
        Path(args.report).write_text(text + "\n")
    print(f"{rep.target}: {rep.verdict} ({len(rep.rejected)} rejected, {len(rep.accepted)} accepted)")
    for name, mode in rep.rejected:
        print(f"  rejected {name}: {mode}")
    for name in rep.accepted:
        print(f"  accepted {name}")
    return rep.exit_code


def cmd_catalog(args) -> int:
    from .catalog import candidate_groups

    cat = candidate_groups(args.order)
    for name, G in zip(cat.names(), cat.groups):
        print(f"{name}\t{G.order}")
    print(f"{len(cat)} groups, complete={cat.complete}, method={cat.method}")
    if args.emit:
        out = Path(args.emit)
        out.mkdir(parents=True, exist_ok=True)
        for i, G in enumerate(cat.groups):
            (out / f"order{args.order}_{i}.json").write_text(json.dumps(G.to_json()) + "\n")
    return EXIT_OK if cat.complete else EXIT_INCOMPLETE


def _parse_env(items) -> dict:
    env = {}
    for item in items or []:
        name, _, val = item.partition("=")
        if not name or not val.lstrip("-").isdigit():
            raise InputError(f"bad binding {item!r}; expected name=element")
        env[name] = int(val)
    return env


def cmd_eval(args) -> int:
    from .logic.evaluate import evaluate

    phi, _ = _read_sentence(args.formula)
    M = load_structure_file(args.structure)
    ok = evaluate(phi, M, _parse_env(args.bind), shortcuts=not args.naive)
    print("true" if ok else "false")
    return EXIT_OK if ok else EXIT_FAILS


def cmd_scaling(args) -> int:
    from .scaling import fitted_constant, scaling_report

    start = 2 if args.family == "symmetric" else 1
    rows = scaling_report(args.family, range(args.min_k or start, args.max_k + 1), args.csv, args.plot)
    for r in rows:
        print("\t".join(str(x) for x in r.as_list()))
    print(f"C (log^3) = {fitted_constant(rows):.3f}, C (log) = {fitted_constant(rows, 'ratio_log'):.3f}")
    return EXIT_OK


def cmd_bound(args) -> int:
    from .bounds import lower_bound_bits

    params = {k: v for k, v in (("p", args.p), ("n", args.n), ("N", args.N)) if v is not None}
    print(lower_bound_bits(args.kind, **params))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fgdesc", description="First-order descriptions of finite groups.")
    ap.add_argument("--version", action="version", version=f"fgdesc {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", help="build a describing sentence")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=("full", "sigma", "presentation"), default="full")
    p.add_argument("--presentation")
    p.add_argument("--out", required=True)
    p.add_argument("--slp", action="store_true", help="also dump the preprocessing SLP")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("verify", help="certify a sentence against a catalog")
    p.add_argument("--sentence", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--catalog-order", type=int)
    p.add_argument("--report")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="list the groups of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--emit")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("eval", help="evaluate a formula on a structure")
    p.add_argument("--formula", required=True)
    p.add_argument("--structure", required=True)
    p.add_argument("--bind", action="append", help="free variable binding name=element")
    p.add_argument("--naive", action="store_true", help="ignore shortcut tags")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("scaling", help="sentence length against log|G|")
    p.add_argument("--family", required=True, choices=("cyclic-2k", "elementary-abelian-2", "dihedral", "symmetric"))
    p.add_argument("--min-k", type=int)
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--csv")
    p.add_argument("--plot")
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("bound", help="counting lower bound in bits")
    p.add_argument("--kind", required=True, choices=("groups-p-n", "graphs", "prime-fields"))
    p.add_argument("-p", type=int)
    p.add_argument("-n", type=int)
    p.add_argument("-N", type=int)
    p.set_defaults(func=cmd_bound)
    return ap


def main(argv=None) -> int:
    from .builders import BuilderError
    from .group import GroupError
    from .logic.sexpr import FormulaSyntaxError
    from .logic.structures import SignatureMismatch
    from .presentations import PresentationError

    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (InputError, GroupError, FormulaSyntaxError, SignatureMismatch, PresentationError, BuilderError,
            KeyError, ValueError) as exc:
        print(f"fgdesc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
