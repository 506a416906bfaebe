import pytest
from hypothesis import given, strategies as st

from liechar.partitions import (
    Partition, PartitionError, conjugate, dominance_leq, enumerate_partitions, parse_partition,
    partitions_upto, richardson_blocks,
)

# p(n) for n = 1..12, from the generating function
PARTITION_COUNTS = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]

partitions = st.integers(1, 10).flatmap(lambda n: st.sampled_from(enumerate_partitions(n)))


def test_counts_match_generating_function():
    assert [len(enumerate_partitions(n)) for n in range(1, 13)] == PARTITION_COUNTS


def test_enumeration_order_and_distinctness():
    ps = enumerate_partitions(6)
    assert ps[0] == Partition((6,)) and ps[-1] == Partition((1,) * 6)
    assert len(set(ps)) == len(ps)
    assert len(partitions_upto(4)) == 1 + 1 + 2 + 3 + 5


def test_rejects_bad_parts():
    with pytest.raises(PartitionError):
        Partition((1, 2))
    with pytest.raises(PartitionError):
        Partition((2, 0))
    with pytest.raises(PartitionError):
        enumerate_partitions(0)


def test_parse_forms():
    assert parse_partition("2^2,1^8") == Partition((2, 2) + (1,) * 8)
    assert parse_partition("[3,1]") == Partition((3, 1))
    assert parse_partition("(3,2,1^6)").n == 11
    assert str(Partition((2, 2, 1))) == "(2^2,1)"


def test_multiplicities_round_trip():
    p = Partition((4, 2, 2, 1, 1, 1))
    assert p.multiplicities == {1: 3, 2: 2, 4: 1}
    assert Partition.from_multiplicities(p.multiplicities) == p


@given(partitions)
def test_conjugate_is_an_involution(p):
    assert conjugate(conjugate(p)) == p
    assert conjugate(p).n == p.n


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.sampled_from(enumerate_partitions(n)), st.sampled_from(enumerate_partitions(n)))))
def test_conjugation_reverses_dominance(pair):
    p, q = pair
    assert dominance_leq(p, q) == dominance_leq(conjugate(q), conjugate(p))


def test_dominance_extremes():
    for p in enumerate_partitions(7):
        assert dominance_leq(Partition((1,) * 7), p)
        assert dominance_leq(p, Partition((7,)))
    with pytest.raises(PartitionError):
        dominance_leq(Partition((2,)), Partition((1,)))


def test_richardson_blocks_of_regular_and_trivial():
    assert richardson_blocks(Partition((4,))) == (1, 1, 1, 1)
    assert richardson_blocks(Partition((1, 1, 1))) == (3,)
