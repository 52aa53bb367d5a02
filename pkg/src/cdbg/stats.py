"""Index statistics: node/edge/color counts and the compression rate."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boss import BossIndex
from .colormatrix import CompressedColors
from .container import IndexMeta


@dataclass
class StatsRecord:
    total_nodes: int
    solid_nodes: int
    edge_count: int
    colored_nodes: int
    num_colors: int
    index_bytes: int
    plain_bytes: int
    ambiguous_count: int | None = None

    @property
    def compression_rate(self) -> float:
        return self.plain_bytes / self.index_bytes if self.index_bytes else 0.0

    @property
    def colored_fraction(self) -> float:
        return self.colored_nodes / self.total_nodes if self.total_nodes else 0.0

    def as_kv_lines(self) -> list[str]:
        amb = "NA" if self.ambiguous_count is None else str(self.ambiguous_count)
        return [
            f"total_nodes={self.total_nodes}",
            f"solid_nodes={self.solid_nodes}",
            f"edge_count={self.edge_count}",
            f"colored_nodes={self.colored_nodes}",
            f"num_colors={self.num_colors}",
            f"index_bytes={self.index_bytes}",
            f"plain_bytes={self.plain_bytes}",
            f"compression_rate={self.compression_rate:.4f}",
            f"colored_fraction={self.colored_fraction:.6f}",
            f"ambiguous_count={amb}",
        ]

    def as_table(self) -> str:
        rows = [line.split("=", 1) for line in self.as_kv_lines()]
        width = max(len(name) for name, _ in rows)
        return "\n".join(f"{name.ljust(width)}  {value}" for name, value in rows)


def compute_stats(
    boss: BossIndex,
    colors: CompressedColors,
    meta: IndexMeta,
    index_bytes: int,
    ambiguous_count: int | None = None,
) -> StatsRecord:
    _, _, solid = boss.taxonomy_bits()
    return StatsRecord(
        total_nodes=boss.node_count,
        solid_nodes=int(np.sum(solid)),
        edge_count=boss.edge_count,
        colored_nodes=colors.p,
        num_colors=colors.num_colors,
        index_bytes=index_bytes,
        plain_bytes=meta.plain_bytes,
        ambiguous_count=ambiguous_count,
    )
