import numpy as np
import pytest
from hypothesis import given, strategies as st

from cdbg.bitvectors import bit_vector
from cdbg.boss import BossIndex
from cdbg.coloring import ColorableMap, DynamicColorTable, color_all, mark_colorable
from cdbg.colormatrix import compress, decode_table, get_colors
from cdbg.errors import IncompleteColoring, NotColored
from cdbg.sequence import ReadSet
from cdbg._binio import Reader, Writer


def table_of(rows):
    t = DynamicColorTable(len(rows))
    t.rows = [list(r) for r in rows]
    return t


def cmap_of(p, n=None):
    n = n or p
    bits = np.zeros(n, dtype=np.uint8)
    bits[:p] = 1
    bv = bit_vector(bits, "plain")
    return ColorableMap(bitmap=bv, p=p)


class TestCompress:
    def test_delta_layout(self):
        cc = compress(table_of([[1], [1, 3], [2]]), cmap_of(3))
        # prefix sums of deltas [1, 1, 2, 2]
        assert list(cc.payload.to_array()) == [1, 2, 4, 6]
        assert list(cc.F.to_bits()) == [1, 1, 0, 1]
        assert cc.num_colors == 3

    def test_single_row(self):
        cc = compress(table_of([[5]]), cmap_of(1))
        assert list(cc.payload.to_array()) == [5]
        assert list(cc.F.to_bits()) == [1]

    def test_empty_row_raises(self):
        with pytest.raises(IncompleteColoring):
            compress(table_of([[1], []]), cmap_of(2))

    def test_f_invariants(self):
        cc = compress(table_of([[2, 7], [1], [3, 4, 9]]), cmap_of(3))
        assert cc.F.count == cc.p
        assert cc.F.get(0) == 1

    @given(
        st.lists(
            st.lists(st.integers(1, 50), min_size=1, max_size=6, unique=True).map(sorted),
            min_size=1,
            max_size=30,
        )
    )
    def test_roundtrip_random_tables(self, rows):
        cc = compress(table_of(rows), cmap_of(len(rows)))
        assert decode_table(cc) == [list(r) for r in rows]

    def test_payload_strictly_increasing(self):
        cc = compress(table_of([[1, 2], [1], [4]]), cmap_of(3))
        ps = cc.payload.to_array()
        assert np.all(np.diff(ps) > 0)


@pytest.fixture(scope="module")
def e1():
    boss = BossIndex.build(ReadSet.from_reads(["tacgt"]), k=4)
    cmap = mark_colorable(boss)
    table = color_all(boss, cmap, ReadSet.from_reads(["tacgt"]))
    return boss, compress(table, cmap), table


class TestGetColors:

    def test_worked_example(self, e1):
        boss, cc, _ = e1
        assert get_colors(cc, boss.label_to_node("gta")) == [2]
        assert get_colors(cc, boss.label_to_node("gt$")) == [1]

    def test_not_colored(self, e1):
        boss, cc, _ = e1
        with pytest.raises(NotColored):
            get_colors(cc, boss.label_to_node("acg"))

    def test_roundtrip_matches_dynamic_table(self, e1):
        _, cc, table = e1
        assert decode_table(cc) == table.rows

    def test_serialization_roundtrip(self, e1):
        _, cc, table = e1
        w = Writer()
        cc.serialize(w)
        from cdbg.colormatrix import CompressedColors

        cc2 = CompressedColors.deserialize(Reader(w.getvalue()))
        assert decode_table(cc2) == table.rows
        assert cc2.num_colors == cc.num_colors


def test_size_beats_plain_bit_matrix():
    """Serialized triple stays below the p x num_colors plain bit matrix."""
    rng = np.random.default_rng(9)
    p, num_colors = 600, 64
    rows = [sorted(rng.choice(np.arange(1, num_colors + 1), size=rng.integers(1, 4), replace=False).tolist()) for _ in range(p)]
    n_nodes = 4 * p
    bits = np.zeros(n_nodes, dtype=np.uint8)
    bits[rng.choice(n_nodes, size=p, replace=False)] = 1
    cmap = ColorableMap(bitmap=bit_vector(bits), p=p)
    cc = compress(table_of(rows), cmap)
    w = Writer()
    cc.serialize(w)
    plain_matrix_bytes = (p * num_colors + 7) // 8
    assert len(w.getvalue()) <= plain_matrix_bytes
