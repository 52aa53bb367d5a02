import numpy as np
import pytest

from cdbg.boss import BossIndex
from cdbg.errors import BadLabel, BadOrder, BoundsError, EmptyIndex
from cdbg.sequence import ReadSet, reverse_complement

from oracle import NaiveDbg


def oracle_for(reads: list[str], k: int) -> NaiveDbg:
    strings = ReadSet.from_reads(reads).strings_with_rc()
    return NaiveDbg(strings, k)


def assert_matches_oracle(boss: BossIndex, oracle: NaiveDbg):
    assert boss.node_count == oracle.node_count
    assert boss.edge_count == oracle.edge_count
    for v in range(1, boss.node_count + 1):
        lab = boss.node_label(v)
        assert lab == oracle.label(v)
        assert boss.label_to_node(lab) == v
        assert boss.outdegree(v) == oracle.outdegree(lab)
        assert boss.indegree(v) == oracle.indegree(lab)
        assert boss.is_starting(v) == oracle.is_starting(lab)
        assert boss.is_ending(v) == oracle.is_ending(lab)
        assert boss.is_solid(v) == oracle.is_solid(lab)
        assert boss.is_critical(v) == oracle.is_critical(lab)
        for sym in "$acgt":
            got = boss.forward(v, sym)
            want = oracle.forward(lab, sym)
            assert (got is None and want is None) or (
                got is not None and boss.node_label(got) == want
            ), (lab, sym)
        for r in range(1, boss.outdegree(v) + 1):
            got = boss.forward_r(v, r)
            want = oracle.forward_r(lab, r)
            assert (got is None and want is None) or (
                got is not None and boss.node_label(got) == want
            )
        assert [boss.node_label(u) for u in boss.backward(v)] == oracle.backward(lab)


class TestWorkedExample:
    """R = {"tacgt"}, k = 4; hand-traceable fixture."""

    def test_node_taxonomy(self, e1_boss):
        labels = {e1_boss.node_label(v) for v in range(1, e1_boss.node_count + 1)}
        solid = {l for l in labels if "$" not in l}
        assert solid == {"tac", "acg", "cgt", "gta"}
        starting = {l for l in labels if e1_boss.is_starting(e1_boss.label_to_node(l))}
        assert starting == {"$ta", "$ac"}
        ending = {l for l in labels if e1_boss.is_ending(e1_boss.label_to_node(l))}
        assert ending == {"gt$", "ta$"}

    def test_outdegrees(self, e1_boss):
        assert e1_boss.outdegree(e1_boss.label_to_node("cgt")) == 2
        assert e1_boss.outdegree(e1_boss.label_to_node("tac")) == 1
        for lab in ("gt$", "ta$"):
            assert e1_boss.outdegree(e1_boss.label_to_node(lab)) == 1

    def test_forward(self, e1_boss):
        tac = e1_boss.label_to_node("tac")
        assert e1_boss.node_label(e1_boss.forward(tac, "g")) == "acg"
        assert e1_boss.forward(tac, "t") is None
        cgt = e1_boss.label_to_node("cgt")
        assert e1_boss.node_label(e1_boss.forward(cgt, "a")) == "gta"

    def test_forward_r(self, e1_boss):
        cgt = e1_boss.label_to_node("cgt")
        assert e1_boss.node_label(e1_boss.forward_r(cgt, 1)) == "gt$"
        assert e1_boss.node_label(e1_boss.forward_r(cgt, 2)) == "gta"
        tac = e1_boss.label_to_node("tac")
        assert e1_boss.node_label(e1_boss.forward_r(tac, 1)) == "acg"
        with pytest.raises(BoundsError):
            e1_boss.forward_r(tac, 2)

    def test_indegree(self, e1_boss):
        assert e1_boss.indegree(e1_boss.label_to_node("acg")) == 2
        assert e1_boss.indegree(e1_boss.label_to_node("tac")) == 1
        assert e1_boss.indegree(1) == 0  # all-dummy root

    def test_backward(self, e1_boss):
        acg = e1_boss.label_to_node("acg")
        assert [e1_boss.node_label(u) for u in e1_boss.backward(acg)] == ["$ac", "tac"]
        tac = e1_boss.label_to_node("tac")
        assert [e1_boss.node_label(u) for u in e1_boss.backward(tac)] == ["$ta"]
        assert e1_boss.backward(1) == []

    def test_node_label_inverse(self, e1_boss):
        assert e1_boss.node_label(e1_boss.label_to_node("$ta")) == "$ta"
        assert e1_boss.node_label(1) == "$$$"
        with pytest.raises(BoundsError):
            e1_boss.node_label(e1_boss.node_count + 1)

    def test_label_to_node(self, e1_boss):
        assert e1_boss.label_to_node("ttt") is None
        with pytest.raises(BadLabel):
            e1_boss.label_to_node("tac" + "g")

    def test_taxonomy_predicates(self, e1_boss):
        assert e1_boss.is_starting(e1_boss.label_to_node("$ta"))
        assert not e1_boss.is_starting(e1_boss.label_to_node("$$t"))
        assert e1_boss.is_critical(e1_boss.label_to_node("gta"))
        assert not e1_boss.is_critical(e1_boss.label_to_node("acg"))

    def test_matches_oracle(self, e1_boss):
        assert_matches_oracle(e1_boss, oracle_for(["tacgt"], 4))


class TestBuildContract:
    def test_empty_read_set(self):
        with pytest.raises(EmptyIndex):
            BossIndex.build(ReadSet.from_reads([]), k=4)

    def test_all_reads_too_short(self):
        with pytest.raises(EmptyIndex):
            BossIndex.build(ReadSet.from_reads(["acg", "ttt"]), k=9)

    def test_bad_order(self):
        reads = ReadSet.from_reads(["acgtacgt"])
        with pytest.raises(BadOrder):
            BossIndex.build(reads, k=2)
        with pytest.raises(BadOrder):
            BossIndex.build(reads, k=64)

    def test_rc_fixed_point_inserted_once(self):
        # "acgt" is its own reverse complement
        rs = ReadSet.from_reads(["acgt"])
        assert rs.strings_with_rc() == ["acgt"]
        boss = BossIndex.build(rs, k=3)
        assert_matches_oracle(boss, NaiveDbg(["acgt"], 3))

    def test_short_reads_skipped_not_fatal(self):
        boss = BossIndex.build(ReadSet.from_reads(["tacgt", "acg"]), k=4)
        ref = BossIndex.build(ReadSet.from_reads(["tacgt"]), k=4)
        assert boss.node_count == ref.node_count


class TestInvariants:
    def test_outdegree_sums_to_edge_count(self, e1_boss):
        total = sum(e1_boss.outdegree(v) for v in range(1, e1_boss.node_count + 1))
        assert total == e1_boss.edge_count

    def test_label_sort_invariant(self, e1_boss):
        keys = [e1_boss.node_label(v)[::-1] for v in range(1, e1_boss.node_count + 1)]
        assert keys == sorted(keys)

    def test_k_array(self, e1_boss):
        k_arr = e1_boss.K
        assert k_arr[0] == 0
        assert k_arr[-1] == e1_boss.node_count
        assert np.all(np.diff(k_arr) >= 0)

    def test_b_has_one_bit_per_node(self, e1_boss):
        assert e1_boss.B.count == e1_boss.node_count

    def test_forward_backward_duality(self, e1_boss):
        for v in range(1, e1_boss.node_count + 1):
            for _, _, u in e1_boss.successors(v):
                assert v in e1_boss.backward(u)
            for u in e1_boss.backward(v):
                assert any(t == v for _, _, t in e1_boss.successors(u))


@pytest.mark.parametrize("seed,k", [(1, 5), (2, 9), (3, 15), (4, 5), (5, 9)])
def test_random_read_sets_match_oracle(seed, k):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 12))
    reads = [
        "".join(rng.choice(list("acgt"), size=int(rng.integers(20, 41))))
        for _ in range(n)
    ]
    boss = BossIndex.build(ReadSet.from_reads(reads), k=k)
    assert_matches_oracle(boss, oracle_for(reads, k))


def test_palindromic_and_duplicate_reads():
    reads = ["acgt", "acgt", "tttt"]
    rs = ReadSet.from_reads(reads)
    assert rs.n_duplicates == 1
    boss = BossIndex.build(rs, k=3)
    assert_matches_oracle(boss, NaiveDbg(rs.strings_with_rc(), 3))


def test_reads_sharing_suffixes_merge_chains():
    reads = ["ttacag", "ggacag", "ttacat"]
    boss = BossIndex.build(ReadSet.from_reads(reads), k=4)
    assert_matches_oracle(boss, oracle_for(reads, 4))
