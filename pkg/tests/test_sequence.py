import pytest
from hypothesis import given, strategies as st

from cdbg.errors import InvalidAlphabet
from cdbg.sequence import ReadSet, reverse_complement, validate_read

dna = st.text(alphabet="acgt", min_size=1, max_size=200)


def test_reverse_complement_examples():
    assert reverse_complement("acgt") == "acgt"
    assert reverse_complement("aaa") == "ttt"
    assert reverse_complement("gattaca") == "tgtaatc"


def test_reverse_complement_rejects_dummy():
    with pytest.raises(InvalidAlphabet):
        reverse_complement("ac$t")


@given(dna)
def test_reverse_complement_involution(s):
    assert reverse_complement(reverse_complement(s)) == s


@given(dna)
def test_reverse_complement_preserves_length(s):
    assert len(reverse_complement(s)) == len(s)


def test_validate_read():
    assert validate_read("ACGT") == ("acgt", None)
    assert validate_read("acgnt") == (None, "non_acgt")
    assert validate_read("") == (None, "empty")
    assert validate_read("acg", k=4) == (None, "too_short")
    assert validate_read(b"AcGt") == ("acgt", None)


def test_symbol_ordering():
    # $ sorts strictly before all nucleotides in plain string comparison
    assert sorted("tgca$") == ["$", "a", "c", "g", "t"]


class TestReadSet:
    def test_dedup_and_counts(self):
        rs = ReadSet.from_reads(["ACGT", "acgt", "nnn", "ttaa"])
        assert rs.reads == ("acgt", "ttaa")
        assert rs.n_duplicates == 1
        assert rs.n_rejected == 1

    def test_strings_with_rc_interleaves(self):
        rs = ReadSet.from_reads(["tacgt", "ccaat"])
        assert rs.strings_with_rc() == ["tacgt", "acgta", "ccaat", "attgg"]

    def test_palindrome_inserted_once(self):
        rs = ReadSet.from_reads(["tacgta"])
        assert rs.strings_with_rc() == ["tacgta"]

    def test_plain_bytes(self):
        rs = ReadSet.from_reads(["acgt", "tt"])
        assert rs.plain_bytes == 6
