"""Figures for benchmark sweeps."""
from __future__ import annotations

from typing import Dict, List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _loglog(ax, xs, ys, label):
    pts = [(x, y) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if pts:
        ax.loglog([p[0] for p in pts], [p[1] for p in pts], marker="o", label=label)


def bench_figures(rows: Sequence[Dict[str, float]], stem: str, title: str = "") -> List[str]:
    """Write ``<stem>_time.png`` and ``<stem>_counters.png``; returns the paths."""
    ns = [r["n"] for r in rows]
    paths = []

    fig, ax = plt.subplots(figsize=(5, 4))
    _loglog(ax, ns, [r["build_ms"] for r in rows], "build (ms)")
    _loglog(ax, ns, [r["mean_query_us"] for r in rows], "mean query (us)")
    ax.set_xlabel("n")
    ax.set_title(title or "time")
    ax.legend()
    fig.tight_layout()
    paths.append(f"{stem}_time.png")
    fig.savefig(paths[-1], dpi=100)
    plt.close(fig)

    keys = sorted({k for r in rows for k in r if k.startswith("mean_") and k != "mean_query_us"})
    fig, ax = plt.subplots(figsize=(5, 4))
    for k in keys:
        _loglog(ax, ns, [r.get(k, 0) for r in rows], k[len("mean_"):])
    ax.set_xlabel("n")
    ax.set_ylabel("per query")
    ax.set_title(title or "counters")
    if keys:
        ax.legend(fontsize="small")
    fig.tight_layout()
    paths.append(f"{stem}_counters.png")
    fig.savefig(paths[-1], dpi=100)
    plt.close(fig)
    return paths
