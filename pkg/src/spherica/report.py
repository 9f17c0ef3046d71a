"""Report rendering: delimited classification output plus fan figures.

``write_report`` drops a ``records.csv`` with one row per (system, DSC)
pair and renders the fan of every admissible map to a PNG next to it
(two-dimensional fans as shaded sectors, one-dimensional ones as arrows,
three-dimensional ones as ray diagrams).
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from spherica import tables
from spherica.admissible import build_fan_eta
from spherica.enumeration import ClassificationRecord


def write_report(records: list[ClassificationRecord], out_dir) -> list[str]:
    """Write the delimited records and one fan figure per admissible map;
    returns the written paths (relative to ``out_dir``)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    csv_path = out / "records.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["system", "colors", "dsc", "admissible_map", "active_roots", "figure"]
        )
        for no, rec in enumerate(records, 1):
            rs = rec.system.rs
            for w in rec.per_witness:
                fig_name = f"fan_sys{no}_dsc{'-'.join(str(i + 1) for i in sorted(w.witness))}.png"
                writer.writerow(
                    [
                        no,
                        tables.kappa_str(rec.system.kappa),
                        tables.dsc_str(w.witness),
                        tables.matrix_str(w.eta.eta),
                        tables.classes_str(rs, w.active_classes),
                        fig_name,
                    ]
                )
                _render_fan(w.eta, out / fig_name, f"system {no}, DSC {tables.dsc_str(w.witness)}")
                written.append(fig_name)
    written.insert(0, "records.csv")
    return written


def _render_fan(am, path, title):
    data = build_fan_eta(am)
    fan = data.system.fan
    dim = fan.ambient
    fig = plt.figure(figsize=(4.2, 4.2))
    if dim == 1:
        ax = fig.add_subplot(111)
        for (x,) in fan.rays():
            ax.annotate(
                "", xy=(x, 0), xytext=(0, 0), arrowprops=dict(arrowstyle="->", lw=1.6)
            )
        ax.set_xlim(-1.4, 1.4)
        ax.set_ylim(-0.6, 0.6)
        ax.axhline(0, color="0.85", zorder=0)
    elif dim == 2:
        ax = fig.add_subplot(111)
        import math

        rays = sorted(
            fan.rays(), key=lambda r: math.atan2(r[1], r[0])
        )
        for cone in fan.maximal_cones:
            (x1, y1), (x2, y2) = cone.rays
            n1 = math.hypot(x1, y1)
            n2 = math.hypot(x2, y2)
            ax.fill(
                [0, 1.2 * x1 / n1, 1.2 * (x1 / n1 + x2 / n2) / 2 * 1.3, 1.2 * x2 / n2],
                [0, 1.2 * y1 / n1, 1.2 * (y1 / n1 + y2 / n2) / 2 * 1.3, 1.2 * y2 / n2],
                alpha=0.12,
            )
        for x, y in rays:
            n = math.hypot(x, y)
            ax.annotate(
                "",
                xy=(1.2 * x / n, 1.2 * y / n),
                xytext=(0, 0),
                arrowprops=dict(arrowstyle="->", lw=1.5),
            )
            ax.text(1.32 * x / n, 1.32 * y / n, f"({x},{y})", ha="center", va="center", fontsize=8)
        ax.set_xlim(-1.6, 1.6)
        ax.set_ylim(-1.6, 1.6)
        ax.set_aspect("equal")
    else:
        ax = fig.add_subplot(111, projection="3d")
        import math

        for ray in fan.rays():
            n = math.sqrt(sum(c * c for c in ray))
            ax.plot(
                [0, ray[0] / n], [0, ray[1] / n], [0, ray[2] / n], lw=1.5
            )
            ax.text(
                1.15 * ray[0] / n,
                1.15 * ray[1] / n,
                1.15 * ray[2] / n,
                "(" + ",".join(str(c) for c in ray) + ")",
                fontsize=7,
            )
        drawn = set()
        for cone in fan.maximal_cones:
            for r1, r2 in zip(cone.rays, cone.rays[1:] + cone.rays[:1]):
                key = frozenset((r1, r2))
                if key in drawn:
                    continue
                drawn.add(key)
                n1 = math.sqrt(sum(c * c for c in r1))
                n2 = math.sqrt(sum(c * c for c in r2))
                ax.plot(
                    [r1[0] / n1, r2[0] / n2],
                    [r1[1] / n1, r2[1] / n2],
                    [r1[2] / n1, r2[2] / n2],
                    lw=0.6,
                    color="0.6",
                )
    ax.set_title(title, fontsize=9)
    ax.set_xticks([])
    ax.set_yticks([])
    if dim == 3:
        ax.set_zticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
