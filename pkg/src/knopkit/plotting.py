"""Static figures for CLI reports, drawn with the Agg backend."""

from __future__ import annotations

from typing import Dict, List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_METADATA = {"png": {"Software": None}, "svg": {"Date": None},
             "pdf": {"Creator": None, "Producer": None, "CreationDate": None}}


def _save(fig, path: str):
    # strip timestamps and version strings so repeated runs give identical files
    ext = str(path).rsplit(".", 1)[-1].lower()
    plt.rcParams["svg.hashsalt"] = "knopkit"
    fig.savefig(path, dpi=120, bbox_inches="tight", metadata=_METADATA.get(ext))
    plt.close(fig)


def hom_dim_heatmap(table: Sequence[Sequence[int]], row_labels: Sequence[str],
                    col_labels: Sequence[str], path: str, title: str = ""):
    """Heatmap of hom dimensions, each cell annotated with its value."""
    n, m = len(row_labels), len(col_labels)
    fig, ax = plt.subplots(figsize=(1.1 + 0.7 * m, 0.9 + 0.6 * n))
    data = [[float(v) for v in row] for row in table]
    im = ax.imshow(data, cmap="viridis", aspect="auto")
    ax.set_xticks(range(m))
    ax.set_xticklabels(col_labels)
    ax.set_yticks(range(n))
    ax.set_yticklabels(row_labels)
    ax.set_xlabel("y")
    ax.set_ylabel("x")
    top = max([max(r) for r in data if r] + [1])
    for i in range(n):
        for j in range(m):
            ax.text(j, i, str(table[i][j]), ha="center", va="center", fontsize=8,
                    color="black" if data[i][j] > 0.6 * top else "white")
    fig.colorbar(im, ax=ax, shrink=0.8, label="dim Hom([x],[y])")
    if title:
        ax.set_title(title, fontsize=10)
    _save(fig, path)


def _levels(elements: Sequence[str], covers: Dict[str, List[str]]) -> Dict[str, int]:
    # height above the minimal elements, via longest chains
    level: Dict[str, int] = {}

    def h(a):
        if a not in level:
            level[a] = 1 + max([h(b) for b in covers[a]], default=-1)
        return level[a]
    for a in elements:
        h(a)
    return level


def hasse_diagram(poset, path: str, title: str = ""):
    """Hasse diagram of a :class:`~knopkit.analysis.Poset`; each node shows
    ``mu(top, node)`` when the poset has a top element."""
    els = list(poset.elements)
    below = {a: [b for b in els if b != a and poset.geq[a][b]] for a in els}
    covers = {a: [b for b in below[a] if not any(c in below[a] and b in below[c] for c in below[a] if c != b)]
              for a in els}
    level = _levels(els, covers)
    tops = [a for a in els if all(poset.geq[a][b] for b in els)]
    rows: Dict[int, List[str]] = {}
    for a in els:
        rows.setdefault(level[a], []).append(a)
    pos = {}
    for lv, names in rows.items():
        for k, a in enumerate(names):
            pos[a] = (k - (len(names) - 1) / 2, lv)
    width = max(len(v) for v in rows.values())
    fig, ax = plt.subplots(figsize=(2 + 1.6 * width, 1.5 + 1.3 * len(rows)))
    for a in els:
        for b in covers[a]:
            (x0, y0), (x1, y1) = pos[a], pos[b]
            ax.plot([x0, x1], [y0, y1], color="0.5", lw=1, zorder=1)
    for a in els:
        x, y = pos[a]
        ax.scatter([x], [y], s=900, color="white", edgecolor="black", zorder=2)
        ax.text(x, y, a, ha="center", va="center", fontsize=8, zorder=3)
        if tops:
            ax.text(x, y - 0.25, f"mu={poset.mu(tops[0], a)}", ha="center", va="top",
                    fontsize=7, color="tab:red")
    ax.set_axis_off()
    ax.margins(0.25)
    if tops:
        title = (title + "\n" if title else "") + f"mu({tops[0]}, S) under each node S"
    if title:
        ax.set_title(title, fontsize=10)
    _save(fig, path)
