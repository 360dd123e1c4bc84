"""Render report figures to files (used by the CLI report path).

All rendering targets the Agg backend so it works headless; figures land
next to the delimited output when requested and are never produced by
default.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["render_report_figures", "render_netmax_figure"]

_DPI = 150


def _ratio_groups(report_dict, check_name):
    groups = {}
    for rec in report_dict["records"]:
        if rec["check"] != check_name:
            continue
        ratio = rec["ratio"]
        if not isinstance(ratio, float):
            continue  # inf/nan sentinels are encoded as strings
        key = (rec["family"], tuple(rec["p"]))
        groups.setdefault(key, []).append((rec["level"], ratio))
    return groups


def _plot_ratio_check(ax, report_dict, check_name, title):
    groups = _ratio_groups(report_dict, check_name)
    for (family, p), points in sorted(groups.items()):
        points.sort()
        levels = [lv for lv, _ in points]
        ratios = [r for _, r in points]
        ax.plot(levels, ratios, marker="o", label=f"{family} p={p}")
    ax.set_yscale("log")
    ax.set_xlabel("grid level")
    ax.set_ylabel("lhs / rhs")
    ax.set_title(title)
    if groups:
        ax.legend(fontsize=6)


def render_report_figures(report_dict: dict, outdir) -> list:
    """Write the sweep figures into ``outdir``; returns the file paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []

    fig, axes = plt.subplots(1, 3, figsize=(13, 4))
    _plot_ratio_check(axes[0], report_dict, "theorem1", "net vs sequence norm")
    _plot_ratio_check(axes[1], report_dict, "theorem1_pure",
                      "net vs sequence norm (pure part)")
    _plot_ratio_check(axes[2], report_dict, "theorem2", "mixed vs sequence norm")
    fig.tight_layout()
    path = outdir / "ratio_stability.png"
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    paths.append(path)

    for check in report_dict["checks"]:
        if check["name"] == "counterexample_growth":
            ks = check["details"]["k_values"]
            qs = check["details"]["quotients"]
            if not ks:
                continue
            fig, ax = plt.subplots(figsize=(5, 4))
            ax.semilogy(ks, qs, marker="s")
            ax.set_xlabel("coefficient level k")
            ax.set_ylabel("full / single ratio quotient")
            ax.set_title("equivalence failure without monotonicity")
            fig.tight_layout()
            path = outdir / "counterexample_growth.png"
            fig.savefig(path, dpi=_DPI)
            plt.close(fig)
            paths.append(path)

    fig, ax = plt.subplots(figsize=(6, 4))
    groups = _ratio_groups(report_dict, "lemma1")
    ratios = [r for points in groups.values() for _, r in points]
    if ratios:
        ax.hist(ratios, bins=24)
    ax.set_xlabel("L_p norm / dyadic running-average sum")
    ax.set_ylabel("count")
    ax.set_title("1D rearrangement check")
    fig.tight_layout()
    path = outdir / "lemma1_ratios.png"
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    paths.append(path)

    return paths


def render_netmax_figure(table, path) -> Path:
    """Heatmap of the rectangle maximal function over integer sizes."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fbar = np.asarray(table.fbar)
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    with np.errstate(divide="ignore"):
        img = ax.imshow(np.log10(np.maximum(fbar, 1e-300)).T, origin="lower",
                        extent=(1, fbar.shape[0], 1, fbar.shape[1]),
                        aspect="auto", cmap="viridis")
    fig.colorbar(img, ax=ax, label="log10 maximal average")
    ax.set_xlabel("size s1 (cells)")
    ax.set_ylabel("size s2 (cells)")
    ax.set_title(f"rectangle maximal function, level {table.level}")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path
