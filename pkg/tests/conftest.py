import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cdbg.boss import BossIndex
from cdbg.sequence import ReadSet


@pytest.fixture(scope="session")
def e1_boss() -> BossIndex:
    """Single read "tacgt" at k=4; the worked example used across modules."""
    return BossIndex.build(ReadSet.from_reads(["tacgt"]), k=4)


def random_read_set(rng, n_reads: int, min_len: int = 20, max_len: int = 60) -> list[str]:
    return [
        "".join(rng.choice(list("acgt"), size=rng.integers(min_len, max_len + 1)))
        for _ in range(n_reads)
    ]
