"""Figure rendering for the report path.

The delimited files produced by `stats` remain the data contract;
these bar charts are drawn from the same Histogram objects purely for
human consumption. The Agg backend keeps rendering headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .stats import Histogram  # noqa: E402

_BAR_COLOR = "#35618f"


def render_histogram(hist: Histogram, path, *, title: str, xlabel: str) -> None:
    """Draw one histogram to a PNG file."""
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    try:
        if hist.bins:
            xs = [b for b, _ in hist.bins]
            ys = [c for _, c in hist.bins]
            if hist.bin_width > 1:
                ax.bar(xs, ys, width=hist.bin_width, align="edge",
                       color=_BAR_COLOR, edgecolor="white", linewidth=0.4)
            else:
                ax.bar(xs, ys, width=0.85, color=_BAR_COLOR)
        else:
            ax.text(0.5, 0.5, "no data", ha="center", va="center",
                    transform=ax.transAxes, color="gray")
        ax.set_title(title)
        ax.set_xlabel(xlabel)
        ax.set_ylabel("games")
        ax.margins(x=0.01)
        fig.tight_layout()
        fig.savefig(path, dpi=110)
    finally:
        plt.close(fig)


def render_run_figures(rounds: Histogram, moves: Histogram, cycles: Histogram,
                       out_dir) -> list[Path]:
    """Render the three standard figures; returns the files written."""
    out = Path(out_dir)
    specs = [
        (rounds, "rounds.png", "Rounds per game", "rounds"),
        (moves, "moves.png", "Moves per game",
         f"moves (bin width {moves.bin_width})"),
        (cycles, "cycle_lengths.png", "Cycle length of non-completing games",
         "cycle length"),
    ]
    written = []
    for hist, name, title, xlabel in specs:
        path = out / name
        render_histogram(hist, path, title=title, xlabel=xlabel)
        written.append(path)
    return written
