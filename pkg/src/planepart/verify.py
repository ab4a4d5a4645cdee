"""Margins and intimacy of a two-class vertex partition.

This is the single source of truth for partition quality: constructions and
searches emit assignments, this module measures them.  The margin of a
vertex is ``2*d_own(v) - d(v)``; a partition is t-internal when every
margin is at least ``2t``, and its intimacy is ``min_v floor(margin(v)/2)``
with floor taken toward minus infinity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph


@dataclass(frozen=True, eq=False)
class MarginReport:
    margin: np.ndarray
    class_sizes: tuple[int, int]
    min_margin_a: int
    min_margin_b: int
    partition_intimacy: int

    def to_json(self, labels=None) -> dict:
        if labels is None:
            labels = [f"v{v}" for v in range(len(self.margin))]
        return {
            "margins": {labels[v]: int(m) for v, m in enumerate(self.margin)},
            "summary": {
                "class_sizes": {"A": self.class_sizes[0], "B": self.class_sizes[1]},
                "min_margin_A": self.min_margin_a,
                "min_margin_B": self.min_margin_b,
                "partition_intimacy": self.partition_intimacy,
            },
        }


def _side_array(partition, n: int) -> np.ndarray:
    side = np.asarray(getattr(partition, "side", partition), dtype=np.int64)
    if side.shape != (n,):
        raise ValueError(f"partition covers {side.size} vertices, graph has {n}")
    if not np.isin(side, (0, 1)).all():
        raise ValueError("partition sides must be 0 (A) or 1 (B)")
    return side


def margins(g: Graph, partition) -> MarginReport:
    """Exact margin report; raises ValueError if either class is empty."""
    side = _side_array(partition, g.n)
    size_a = int(np.count_nonzero(side == 0))
    size_b = g.n - size_a
    if size_a == 0 or size_b == 0:
        raise ValueError("both partition classes must be nonempty")
    same = (side[g.indices] == np.repeat(side, g.degrees)).astype(np.int64)
    cum = np.concatenate(([0], np.cumsum(same)))
    d_own = cum[g.indptr[1:]] - cum[g.indptr[:-1]]
    margin = 2 * d_own - g.degrees
    return MarginReport(
        margin=margin,
        class_sizes=(size_a, size_b),
        min_margin_a=int(margin[side == 0].min()),
        min_margin_b=int(margin[side == 1].min()),
        partition_intimacy=int((margin // 2).min()),
    )


def is_internal(g: Graph, partition) -> bool:
    """True when every vertex has at least half its neighbors on its side."""
    return margins(g, partition).partition_intimacy >= 0


def is_strict(g: Graph, partition) -> bool:
    """True when every vertex has strictly more neighbors on its own side."""
    return bool((margins(g, partition).margin >= 1).all())
