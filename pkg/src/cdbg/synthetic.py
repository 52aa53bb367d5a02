"""Deterministic synthetic genome and error-free read sampling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sequence import reverse_complement


@dataclass
class SyntheticConfig:
    genome_len: int = 100_000
    read_len: int = 100
    coverage: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.read_len > self.genome_len:
            raise ValueError("read length exceeds genome length")
        if min(self.genome_len, self.read_len, self.coverage) <= 0:
            raise ValueError("genome length, read length and coverage must be positive")

    @property
    def n_reads(self) -> int:
        return self.genome_len * self.coverage // self.read_len


def generate_genome(cfg: SyntheticConfig) -> str:
    rng = np.random.default_rng(cfg.seed)
    codes = rng.integers(0, 4, size=cfg.genome_len)
    return "".join("acgt"[c] for c in codes)


def generate_reads(cfg: SyntheticConfig) -> tuple[str, list[str]]:
    """Uniform error-free reads off both strands; same seed, same output."""
    genome = generate_genome(cfg)
    rng = np.random.default_rng(cfg.seed + 1)
    n = cfg.n_reads
    starts = rng.integers(0, cfg.genome_len - cfg.read_len + 1, size=n)
    strands = rng.integers(0, 2, size=n)
    reads = []
    for pos, strand in zip(starts, strands):
        r = genome[pos : pos + cfg.read_len]
        reads.append(reverse_complement(r) if strand else r)
    return genome, reads
