"""Figure rendering for sweep outputs. One curve per CSV, written next to it."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["render_sweep"]


def render_sweep(rows: list[dict], x_key: str, y_key: str, out_path,
                 title: str = "", y_err_key: str | None = None) -> None:
    """Render one x/y curve (optionally with error bars) from sweep rows."""
    xs = [float(r[x_key]) for r in rows]
    ys = [float(r[y_key]) for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    if y_err_key and all(y_err_key in r for r in rows):
        errs = [float(r[y_err_key]) for r in rows]
        ax.errorbar(xs, ys, yerr=errs, marker="o", capsize=3, lw=1.2)
    else:
        ax.plot(xs, ys, marker="o", lw=1.2)
    ax.set_xlabel(x_key)
    ax.set_ylabel(y_key)
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
