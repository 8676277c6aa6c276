"""Figure rendering for the report path.

Renders the scaling summary to PNG files alongside the delimited output:
median colour counts and diameters against n (log-x), and the ratio
columns whose boundedness the experiments track.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def _group_label(group: dict) -> str:
    bits = [group["pipeline"]]
    if group.get("model"):
        bits.append(group["model"])
    if group.get("r"):
        bits.append(f"r={group['r']}")
    return " ".join(bits)


def render_report_figures(summary: dict, outdir) -> list:
    """Write the summary figures into ``outdir``; returns the file paths."""
    import os

    os.makedirs(outdir, exist_ok=True)
    written = []

    colour_series = []
    diam_series = []
    ratio_series = []
    for group in summary.get("groups", []):
        label = _group_label(group)
        ns, medians, ratios, diams, dratios = [], [], [], [], []
        for cell in group["cells"]:
            ns.append(cell["n"])
            medians.append(cell.get("colours_median"))
            ratios.append(
                cell.get("colours_per_lognr", cell.get("colours_per_log_n"))
            )
            diams.append(cell.get("diam_median"))
            dratios.append(cell.get("diam_per_log2_n"))
        if any(v is not None for v in medians):
            colour_series.append((label, ns, medians))
        if any(v is not None for v in diams):
            diam_series.append((label, ns, diams))
        pick = ratios if any(v is not None for v in ratios) else dratios
        if any(v is not None for v in pick):
            ratio_series.append((label, ns, pick))

    specs = [
        ("colours_vs_n.png", colour_series, "median colours used", "log"),
        ("diameter_vs_n.png", diam_series, "median diameter", "log"),
        ("scaling_ratios.png", ratio_series, "ratio to log-scale target", "log"),
    ]
    for filename, series, ylabel, xscale in specs:
        if not series:
            continue
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        for label, ns, values in series:
            xs = [n for n, v in zip(ns, values) if v is not None]
            ys = [v for v in values if v is not None]
            if xs:
                ax.plot(xs, ys, marker="o", label=label)
        ax.set_xscale(xscale)
        ax.set_xlabel("n")
        ax.set_ylabel(ylabel)
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=8)
        fig.tight_layout()
        path = os.path.join(outdir, filename)
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
