"""Matplotlib rendering of report figures next to the delimited output.

Imported lazily by the CLI so that plain report runs stay matplotlib-free.
"""

from __future__ import annotations

from typing import Sequence


def _axes(title: str):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.set_title(title)
    return fig, ax


def render_density_profile(samples: Sequence[tuple[float, float]], path: str, title: str) -> None:
    """Density profile v(x) on a log-x axis, written to an image file."""
    fig, ax = _axes(title)
    xs = [s[0] for s in samples]
    vs = [s[1] for s in samples]
    positive_x = [x for x in xs if x > 0]
    ax.plot(xs, vs, lw=1.4)
    if positive_x:
        ax.set_xscale("symlog", linthresh=min(positive_x))
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel("x = |z|^2")
    ax.set_ylabel("density v(x)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    _close(fig)


def render_sweep(result, path: str) -> None:
    """Certified a-intervals as colored horizontal bars."""
    fig, ax = _axes(f"certified Kahler locus, k = {result.k}")
    colors = {
        "all-x-coeffs-positive": "#2d7f2d",
        "not-kahler": "#b03030",
        "kahler-at-all-samples": "#d8a020",
    }
    labels_done = set()
    for group in (result.inner, result.gaps, result.unresolved):
        for piece in group:
            label = piece.property if piece.property not in labels_done else None
            labels_done.add(piece.property)
            ax.barh(
                0,
                float(piece.hi - piece.lo),
                left=float(piece.lo),
                height=0.5,
                color=colors.get(piece.property, "0.5"),
                label=label,
            )
    ax.set_yticks([])
    ax.set_xlim(float(result.lo), float(result.hi))
    ax.set_xlabel("parameter a")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    _close(fig)


def _close(fig) -> None:
    import matplotlib.pyplot as plt

    plt.close(fig)
