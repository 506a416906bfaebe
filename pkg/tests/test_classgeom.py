import pytest
from hypothesis import given, strategies as st

from liechar.classgeom import (
    Family, GeometryError, GroupFamily, LeviShape, conjugate_square_sum, coxeter_number, dim_class,
    dim_group, gl_centralizer_sum, is_valid_type, parse_family,
)
from liechar.partitions import Partition, enumerate_partitions


def fam(kind, n):
    return GroupFamily(Family(kind), n)


def test_group_dimensions():
    assert dim_group(fam("GL", 4)) == 16
    assert dim_group(fam("SL", 4)) == 15
    assert dim_group(fam("Sp", 6)) == 21
    assert dim_group(fam("SO_odd", 7)) == 21
    assert dim_group(fam("SO_even", 12)) == 66


def test_coxeter_numbers():
    assert coxeter_number(fam("SL", 5)) == 5
    assert coxeter_number(fam("Sp", 8)) == 8
    assert coxeter_number(fam("SO_odd", 9)) == 8
    assert coxeter_number(fam("SO_even", 10)) == 8


@given(st.integers(1, 10).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))))
def test_gl_centralizer_is_sum_of_squared_conjugate_parts(p):
    assert gl_centralizer_sum(p) == conjugate_square_sum(p)


@pytest.mark.parametrize("kind,n", [("GL", 5), ("Sp", 8), ("SO_odd", 9), ("SO_even", 10)])
def test_regular_and_trivial_classes(kind, n):
    f = fam(kind, n)
    rank = n if kind == "GL" else n // 2
    regular = Partition((n,)) if kind != "SO_even" else Partition((n - 1, 1))
    assert dim_class(f, Partition((1,) * n)) == 0
    assert dim_class(f, regular) == dim_group(f) - rank


def test_subregular_and_minimal_sp():
    # Sp_6: subregular (4,2) has codim 2 in the regular class, the long-root class (2,1^4) has dim 6
    f = fam("Sp", 6)
    assert dim_class(f, Partition((6,))) - dim_class(f, Partition((4, 2))) == 2
    assert dim_class(f, Partition((2, 1, 1, 1, 1))) == 6


def test_class_dimensions_are_even_and_monotone_under_dominance():
    f = fam("SO_even", 12)
    types = [p for p in enumerate_partitions(12) if is_valid_type(Family.SO_even, p)]
    for p in types:
        assert dim_class(f, p) % 2 == 0
    assert dim_class(f, Partition((2,) * 6)) == 30


def test_parity_rules():
    assert not is_valid_type(Family.Sp, Partition((3, 1)))  # odd parts of Sp must pair up
    assert is_valid_type(Family.Sp, Partition((3, 3)))
    assert not is_valid_type(Family.SO_odd, Partition((2, 1, 1, 1, 1, 1, 1)))
    with pytest.raises(GeometryError):
        dim_class(fam("Sp", 4), Partition((3, 1)))


def test_levi_shapes():
    s = LeviShape.of(fam("Sp", 10), (2, 1))
    assert s.classical_factor == 4
    assert s.dim() == 4 + 1 + 10
    assert LeviShape.of(fam("SL", 3), (1, 1, 1)).dim() == 2
    assert LeviShape.of(fam("SL", 3), (1, 1, 1)).is_torus()
    with pytest.raises(GeometryError):
        LeviShape.of(fam("GL", 4), (2, 1))
    with pytest.raises(GeometryError):
        fam("Sp", 5)


def test_parse_family_aliases():
    assert parse_family("gl") is Family.GL
    assert parse_family("Sp") is Family.Sp
