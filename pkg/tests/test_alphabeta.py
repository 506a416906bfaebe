from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from liechar import alphabeta as ab
from liechar.classgeom import Family, GroupFamily, LeviShape, dim_class
from liechar.partitions import Partition, conjugate, enumerate_partitions


def gl_shape(*sizes):
    return LeviShape.of(GroupFamily(Family.GL, sum(sizes)), sizes)


def _beta_from_dims(sizes):
    """Independent route: maximise dim u^L / dim u^G over Jordan types directly."""
    n = sum(sizes)
    G = GroupFamily(Family.GL, n)
    best = Fraction(0)
    for types in product(*(enumerate_partitions(k) for k in sizes)):
        if all(p.is_trivial() for p in types):
            continue
        num = sum(dim_class(GroupFamily(Family.GL, k), p) for k, p in zip(sizes, types) if k > 1)
        # the induced class has Jordan type conjugate to the sum of conjugates
        merged = conjugate(Partition.of(
            [sum(x) for x in _zip_pad([conjugate(p).parts for p in types])]))
        best = max(best, Fraction(num, dim_class(G, merged)))
    return best


def _zip_pad(rows):
    width = max(len(r) for r in rows)
    return list(zip(*[tuple(r) + (0,) * (width - len(r)) for r in rows]))


@pytest.mark.parametrize("sizes,value", [
    ((3, 2), Fraction(1, 2)), ((2, 2), Fraction(1, 2)), ((4, 1), Fraction(3, 4)),
    ((3, 3, 3), Fraction(1, 3)), ((2, 1, 1), Fraction(1, 3)),
])
def test_known_beta_values(sizes, value):
    assert ab.beta_bruteforce(sizes).value == value


@pytest.mark.parametrize("sizes", [(2, 1), (3, 1), (3, 2), (2, 2, 1), (4, 2), (3, 2, 1)])
def test_beta_agrees_with_dimension_oracle(sizes):
    assert ab.beta_bruteforce(sizes).value == _beta_from_dims(sizes)


def test_closed_form_m2():
    for n1 in range(2, 12):
        for n2 in range(1, min(n1, 12 - n1) + 1):
            assert ab.beta_bruteforce((n1, n2)).value == ab.beta_closed_m2(n1, n2)


def test_equality_cases_cover_all_maximisers():
    for n1, n2 in [(3, 3), (4, 2), (4, 3), (5, 1)]:
        for rows in ab.beta_maximisers((n1, n2)):
            assert ab.is_m2_equality_case(rows, (n1, n2))


def test_rectangular_shapes():
    for k in range(2, 5):
        for m in range(1, 12 // k + 1):
            assert ab.beta_bruteforce((k,) * m).value == Fraction(1, m)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=2, max_size=4).filter(lambda s: sum(s) <= 9))
def test_sandwich(sizes):
    lo, hi = ab.sandwich_bounds(sizes)
    assert lo <= ab.beta_bruteforce(sizes).value <= hi


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=2, max_size=4).filter(lambda s: sum(s) <= 9))
def test_alpha_equals_beta_for_gl(sizes):
    assert ab.alpha_classical(gl_shape(*sizes)).value == ab.beta_bruteforce(sizes).value


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7).flatmap(lambda a: st.integers(1, 7).flatmap(lambda b: st.tuples(
    st.sampled_from(enumerate_partitions(a)), st.sampled_from(enumerate_partitions(b))))))
def test_h_superadditive(pair):
    p, q = pair
    assert ab.h_value(p) + ab.h_value(q) <= ab.h_value(ab.partition_sum(p, q))


def test_ratio_bound_on_classical_shapes():
    for fam in ab.classical_families(10):
        for shape in ab.levi_shapes(fam):
            ok, slack = ab.check_ratio_bound(shape)
            assert ok and slack >= 0, str(shape)


def test_gl_regular_ratio_attained_only_at_corank_one():
    for n in range(3, 8):
        top = ab.gl_regular_ratio(n)
        for shape in ab.levi_shapes(GroupFamily(Family.GL, n)):
            value = ab.alpha_classical(shape).value
            assert value <= top
            assert (value == top) == (sorted(shape.gl_factors) == [1, n - 1])


def test_torus_has_alpha_zero():
    assert ab.alpha_classical(gl_shape(1, 1, 1)).value == 0
    assert ab.beta_bruteforce((1, 1)).value == 0


def test_supp_constants_multiply_to_rank():
    for fam in [GroupFamily(Family.SL, 5), GroupFamily(Family.Sp, 8), GroupFamily(Family.SO_odd, 9),
                GroupFamily(Family.SO_even, 10)]:
        c, rp = ab.supp_constants(fam)
        assert c * rp == fam.rank
    with pytest.raises(ValueError):
        ab.supp_constants(GroupFamily(Family.GL, 3))


def test_f_bound_components():
    fb = ab.f_bound(4, 5)
    assert (fb.weyl, fb.max_dim, fb.component_bound) == (1152, 52, 24)
    assert fb.general == 1152 ** 2 * 24 * Fraction(6, 4) ** 24
    assert fb.closed_form is None
    assert ab.f_bound(9, 82).closed_form == 2 ** (18 + 5 + 3) * 362880 ** 2
    with pytest.raises(ValueError):
        ab.f_bound(0, 5)


def test_search_guard():
    with pytest.raises(ab.SearchGuardError):
        ab.beta_bruteforce((8, 8))
