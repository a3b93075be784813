"""Report files for verification runs: delimited summary plus rendered figures.

The CSV carries one row per (theorem, n); the figure shows the per-theorem
status grid and, where the evidence carries genus values, the value curves.
Output is deterministic: fixed figure geometry, fixed metadata, no
timestamps.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import List, Sequence

from .theorems import VerifyReport

_STATUS_LEVEL = {"confirmed": 0, "refuted": 1, "inconclusive": 2}


def _rows(reports: Sequence[VerifyReport]) -> List[dict]:
    rows = []
    for rep in reports:
        for res in rep.results:
            rows.append(
                {
                    "theorem": rep.theorem,
                    "n": res.n,
                    "status": res.status,
                    "value": res.evidence.get("value", ""),
                    "expected": res.evidence.get("expected", ""),
                }
            )
    return rows


def write_csv(reports: Sequence[VerifyReport], path: Path) -> None:
    rows = _rows(reports)
    with open(path, "w", newline="") as handle:
        writer = csv.DictWriter(
            handle, fieldnames=["theorem", "n", "status", "value", "expected"]
        )
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def write_figure(reports: Sequence[VerifyReport], path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    theorems = [rep.theorem for rep in reports]
    ns = sorted({res.n for rep in reports for res in rep.results})
    fig, (ax_grid, ax_vals) = plt.subplots(
        1, 2, figsize=(11, 0.6 + max(3, 0.45 * len(theorems))), dpi=110
    )

    grid = [
        [
            _STATUS_LEVEL.get(
                next((r.status for r in rep.results if r.n == n), "inconclusive"), 2
            )
            for n in ns
        ]
        for rep in reports
    ]
    if grid:
        ax_grid.imshow(grid, cmap="RdYlGn_r", vmin=0, vmax=2, aspect="auto")
    ax_grid.set_xticks(range(len(ns)), [str(n) for n in ns])
    ax_grid.set_yticks(range(len(theorems)), theorems, fontsize=8)
    ax_grid.set_xlabel("n")
    ax_grid.set_title("verification status (green=confirmed)")

    plotted = False
    for rep in reports:
        pts = [
            (res.n, res.evidence["value"])
            for res in rep.results
            if isinstance(res.evidence.get("value"), int)
        ]
        if len(pts) >= 2:
            xs, ys = zip(*sorted(pts))
            ax_vals.plot(xs, ys, marker="o", label=rep.theorem)
            plotted = True
    ax_vals.set_xlabel("n")
    ax_vals.set_ylabel("minimal genus")
    ax_vals.set_title("genus invariants")
    if plotted:
        ax_vals.legend(fontsize=7)
    else:
        ax_vals.text(0.5, 0.5, "no numeric values", ha="center", va="center")
        ax_vals.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": "qdsurf"})
    plt.close(fig)


def write_report_files(reports: Sequence[VerifyReport], outdir: Path) -> List[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / "verify_report.csv"
    png_path = outdir / "verify_report.png"
    write_csv(reports, csv_path)
    write_figure(reports, png_path)
    return [csv_path, png_path]
