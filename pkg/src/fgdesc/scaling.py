"""Length-scaling reports: sentence length against log|G| for group families."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .builders import char_simple_sentence, cyclic_sentence, length_constants, log2
from .group import CyclicFamily, DihedralFamily, ElementaryAbelian2Family, cyclic, symmetric
from .logic.metrics import binary_length, symbol_length
from .pipeline import describe_group
from .verify import config_hash

FAMILIES = ("cyclic-2k", "elementary-abelian-2", "dihedral", "symmetric")
SCHEMA_VERSION = 1
COLUMNS = ("family", "k", "order", "length", "binary_length", "log_order", "log3_order", "ratio_log3", "ratio_log")


class ScalingError(ValueError):
    pass


@dataclass
class ScalingRow:
    family: str
    k: int
    order: int
    length: int
    binary_length: int

    @property
    def log_order(self) -> int:
        return log2(self.order)

    @property
    def log3_order(self) -> int:
        return self.log_order ** 3

    @property
    def ratio_log3(self) -> float:
        return self.length / max(self.log3_order, 1)

    @property
    def ratio_log(self) -> float:
        return self.length / max(self.log_order, 1)

    def as_list(self) -> list:
        return [self.family, self.k, self.order, self.length, self.binary_length, self.log_order, self.log3_order,
                f"{self.ratio_log3:.4f}", f"{self.ratio_log:.4f}"]


def family_sentence(family: str, k: int):
    """(order, sentence) for member k of a family."""
    if family == "cyclic-2k":
        G = CyclicFamily(2 ** k) if k > 4 else cyclic(2 ** k)
        return G.order, describe_group(G).formula
    if family == "elementary-abelian-2":
        # characteristically simple, so the short sentence applies
        return 2 ** k, char_simple_sentence(cyclic(2), k)
    if family == "dihedral":
        G = DihedralFamily(2 ** k)
        return G.order, describe_group(G).formula
    if family == "symmetric":
        if k < 2:
            raise ScalingError("symmetric family starts at k = 2")
        G = symmetric(k)
        return G.order, describe_group(G).formula
    if family == "cyclic-sentence":
        return 2 ** k, cyclic_sentence(2, k)
    raise ScalingError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def scaling_rows(family: str, ks) -> list[ScalingRow]:
    rows = []
    for k in ks:
        order, f = family_sentence(family, k)
        rows.append(ScalingRow(family, k, order, symbol_length(f), binary_length(f)))
    return rows


def fitted_constant(rows: list[ScalingRow], column: str = "ratio_log3") -> float:
    return max((getattr(r, column) for r in rows), default=0.0)


def check_ceiling(rows: list[ScalingRow]) -> float:
    """The log^3 ratio never exceeds the build-time describe constant."""
    c = length_constants()["describe"]
    worst = fitted_constant(rows)
    if worst > c:
        raise ScalingError(f"ratio {worst:.2f} exceeds the ceiling {c}")
    return worst


def write_csv(rows: list[ScalingRow], path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(f"# fgdesc {__version__} schema {SCHEMA_VERSION} config {config_hash()}\n")
        w = csv.writer(fh)
        w.writerow(COLUMNS)
        for r in rows:
            w.writerow(r.as_list())
    return path


def read_csv(path) -> list[dict]:
    with open(path) as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def plot_rows(rows: list[ScalingRow], path, column: str = "log3_order") -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    x = [getattr(r, column) for r in rows]
    y = [r.length for r in rows]
    c = max(yi / max(xi, 1) for xi, yi in zip(x, y))
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(x, y, "o-", label=rows[0].family if rows else "")
    ax.plot(x, [c * xi for xi in x], "--", color="grey", label=f"C = {c:.1f}")
    ax.set_xlabel("log^3 |G|" if column == "log3_order" else "log |G|")
    ax.set_ylabel("symbol length")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def scaling_report(family: str, ks, csv_path=None, plot_path=None) -> list[ScalingRow]:
    """Rows for the family; writes the CSV and a figure next to it when asked."""
    rows = scaling_rows(family, ks)
    if family not in ("elementary-abelian-2", "cyclic-sentence"):
        check_ceiling(rows)
    if csv_path is not None:
        write_csv(rows, csv_path)
        if plot_path is None:
            plot_path = Path(csv_path).with_suffix(".png")
    if plot_path is not None and rows:
        column = "log_order" if family in ("elementary-abelian-2", "cyclic-sentence") else "log3_order"
        plot_rows(rows, plot_path, column)
    return rows
