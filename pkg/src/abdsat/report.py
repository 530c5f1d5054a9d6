"""Encoding-size scaling reports: delimited data plus rendered figures.

The study family is an implication chain c0 -> c1 -> ... -> c{n-1} with
hypotheses early in the chain and six late manifestations, plus a few
pendant toggle pairs b_j -> d_j off to the side.  The theory is already
Horn and Krom, so every variable set is a strong backdoor for either
class; taking the first k toggles gives nested backdoors over one fixed
theory.  Assignments to the toggles never touch the chain, so no block
reduct simplifies and each of the 2^k blocks carries the same encoding
work, which is exactly what the growth study wants to expose: block
count doubles per unit of k, and the least-model unrolling inside a
block is quadratic in n.
"""

from __future__ import annotations

import csv
import time
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .backdoor import BackdoorSet
from .instance import AbductionInstance, build_instance
from .pipeline import encode_instance

MIN_CHAIN = 18
TOGGLES = 6


def chain_instance(n: int) -> AbductionInstance:
    """Implication chain with early hypotheses and six late manifestations.

    Six pendant toggle clauses b_j -> d_j supply backdoor variables that
    are irrelevant to the chain: assigning them satisfies or shortens
    only their own clause, keeping the per-block work constant.  Several
    manifestations and pairwise-exclusive hypotheses keep that work
    large next to the shared theory copy.
    """
    if n < MIN_CHAIN:
        raise ValueError(f"chain needs at least {MIN_CHAIN} variables")
    names = [f"c{i}" for i in range(n)]
    names += [f"b{j}" for j in range(TOGGLES)] + [f"d{j}" for j in range(TOGGLES)]
    clauses = [[(False, f"c{i}"), (True, f"c{i + 1}")] for i in range(n - 1)]
    clauses += [[(False, f"b{j}"), (True, f"d{j}")] for j in range(TOGGLES)]
    hyps = ["c1", "c3", "c5"]
    clauses += [
        [(False, a), (False, b)] for a, b in combinations(hyps, 2)
    ]
    mans = [f"c{i}" for i in range(n - 12, n) if i % 2 == 1]
    return build_instance(names, hyps, mans, clauses)


def chain_backdoor(
    inst: AbductionInstance, k: int, base_class: str
) -> BackdoorSet:
    if not 0 < k <= TOGGLES:
        raise ValueError(f"k must be in 1..{TOGGLES}")
    variables = [inst.var_by_name(f"b{j}") for j in range(k)]
    return BackdoorSet.for_theory(inst.theory, variables, base_class)


def scaling_rows(
    base_class: str,
    n: int = 20,
    ks: Sequence[int] = tuple(range(1, 7)),
) -> List[Dict]:
    inst = chain_instance(n)
    rows = []
    for k in ks:
        backdoor = chain_backdoor(inst, k, base_class)
        start = time.perf_counter()
        enc = encode_instance(inst, backdoor)
        elapsed = (time.perf_counter() - start) * 1000.0
        rows.append(
            {
                "class": base_class,
                "n": n,
                "k": k,
                "variables": enc.num_variables,
                "clauses": enc.num_clauses,
                "build_ms": round(elapsed, 2),
            }
        )
    return rows


def doubling_rows(base_class: str, n: int = 30, k: int = 3) -> List[Dict]:
    out = []
    for size in (n, 2 * n):
        out.extend(scaling_rows(base_class, n=size, ks=(k,)))
    return out


def write_csv(rows: Iterable[Dict], path: str) -> None:
    rows = list(rows)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(
            handle, fieldnames=["class", "n", "k", "variables", "clauses", "build_ms"]
        )
        writer.writeheader()
        writer.writerows(rows)


def render_figures(
    k_rows: List[Dict], n_rows: List[Dict], out_dir: str
) -> List[str]:
    """Two PNGs: clause count against k (log2 axis with a doubling

    reference) and against n at fixed k."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import os

    paths = []
    by_class: Dict[str, List[Dict]] = {}
    for row in k_rows:
        by_class.setdefault(row["class"], []).append(row)

    fig, ax = plt.subplots(figsize=(6, 4))
    for cls, rows in sorted(by_class.items()):
        rows = sorted(rows, key=lambda r: r["k"])
        ax.plot([r["k"] for r in rows], [r["clauses"] for r in rows], "o-", label=cls)
        base = rows[0]
        ax.plot(
            [r["k"] for r in rows],
            [base["clauses"] * 2 ** (r["k"] - base["k"]) for r in rows],
            "--",
            color="gray",
            linewidth=0.8,
            label=f"{cls} doubling reference",
        )
    ax.set_yscale("log", base=2)
    ax.set_xlabel("backdoor size k")
    ax.set_ylabel("CNF clauses")
    ax.set_title(f"Encoding growth in k (n = {k_rows[0]['n']})")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = os.path.join(out_dir, "scaling_k.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    paths.append(path)

    by_class = {}
    for row in n_rows:
        by_class.setdefault(row["class"], []).append(row)
    fig, ax = plt.subplots(figsize=(6, 4))
    for cls, rows in sorted(by_class.items()):
        rows = sorted(rows, key=lambda r: r["n"])
        ax.plot([r["n"] for r in rows], [r["clauses"] for r in rows], "o-", label=cls)
    ax.set_xlabel("chain length n")
    ax.set_ylabel("CNF clauses")
    ax.set_title(f"Encoding growth in n (k = {n_rows[0]['k']})")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = os.path.join(out_dir, "scaling_n.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    paths.append(path)
    return paths


def run_report(
    out_dir: str,
    base_classes: Sequence[str] = ("horn", "krom"),
    n: int = 20,
    double_n: int = 30,
    k_max: int = 6,
) -> Dict:
    import os

    os.makedirs(out_dir, exist_ok=True)
    k_rows: List[Dict] = []
    n_rows: List[Dict] = []
    for cls in base_classes:
        k_rows.extend(scaling_rows(cls, n=n, ks=tuple(range(1, k_max + 1))))
        n_rows.extend(doubling_rows(cls, n=double_n))
    csv_path = os.path.join(out_dir, "scaling.csv")
    write_csv(k_rows + n_rows, csv_path)
    figures = render_figures(k_rows, n_rows, out_dir)
    return {"csv": csv_path, "figures": figures, "rows": k_rows + n_rows}
