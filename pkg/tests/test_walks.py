import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from liechar import ffgroup as ff
from liechar import spectra as sp
from liechar import walks as wk
from liechar.alphabeta import supp_constants
from liechar.classgeom import Family, GroupFamily, LeviShape
from liechar.fields import mat_mul


def setup(kind, n, q):
    t = ff.build_class_table(ff.GroupSpec.of(kind, n, q))
    return t, ff.structure_constants(t)


def test_e_bracket():
    for k in (3, 8, 15):
        lo, hi = wk.e_bracket(k)
        assert lo < math.e < hi


@given(st.fractions(min_value=0, max_value=1, max_denominator=10**9))
def test_exact_inverse_e_comparison(x):
    inv_e = 1 / math.e
    if abs(float(x) - inv_e) > 1e-12:
        assert wk.less_than_inv_e(x) == (float(x) < inv_e)


def test_inverse_e_close_calls():
    assert wk.less_than_inv_e(Fraction(36787944117, 10**11))
    assert not wk.less_than_inv_e(Fraction(36787944118, 10**11))
    assert wk.less_than(Fraction(1, 3), Fraction(1, 2))


def test_first_steps():
    t, sc = setup("SL", 2, 5)
    c = 3
    s0 = wk.initial_state(t, c)
    n0 = wk.norms(s0, t)
    assert n0.l1 == 2 * (1 - Fraction(1, t.group.order))
    s1 = wk.step(s0, c, sc)
    assert s1.probs[c] == Fraction(1, int(t.sizes[c]))
    assert sum(p for p in s1.probs) == s1.probs[c]


def test_mass_is_conserved():
    t, sc = setup("GL", 2, 5)
    c = t.num_classes - 1
    state = wk.initial_state(t, c)
    for _ in range(5):
        state = wk.step(state, c, sc)
        assert sum(n * int(s) for n, s in zip(state.counts, t.sizes)) == state.denominator


def test_uniform_state_has_zero_distance():
    t, _ = setup("SL", 2, 5)
    uniform = wk.WalkState((1,) * t.num_classes, 1, t.group.order)
    assert wk.norms(uniform, t) == wk.Norms(Fraction(0), Fraction(0))


@pytest.mark.parametrize("group", [("GL", 2, 3), ("GL", 2, 5), ("SL", 2, 5), ("SL", 2, 7)])
def test_convolution_matches_frobenius_formula(group):
    t, sc = setup(*group)
    table = sp.character_table(t, sc)
    for c in range(1, t.num_classes):
        state = wk.initial_state(t, c)
        for steps in range(1, 7):
            state = wk.step(state, c, sc)
            exact = wk.class_function_floats(state)
            assert np.max(np.abs(exact - wk.frobenius_distribution(table, c, steps))) < 1e-8


def test_covering_number_and_lower_bound():
    t, sc = setup("SL", 2, 7)
    for c in range(t.num_classes):
        if int(t.sizes[c]) == 1:
            with pytest.raises(wk.WalkError):
                wk.covering_number(t, c, sc)
            continue
        cn = wk.covering_number(t, c, sc)
        assert cn >= math.log(t.group.order) / math.log(int(t.sizes[c]))


def _naive_covering_number(t, c):
    """Grow C^k as explicit element sets until it is all of G."""
    F = t.group.field
    key = lambda m: tuple(x for row in m for x in row)
    cls = [m.tolist() for m, k in zip(t.mats, t.element_class) if k == c]
    power, k = {key(m): m for m in cls}, 1
    while len(power) < t.group.order:
        power = {key(p): p for p in (mat_mul(F, a, b) for a in power.values() for b in cls)}
        k += 1
    return k


@pytest.mark.parametrize("rep", [[[1, 1], [0, 1]], [[2, 0], [0, 3]], [[0, 1], [4, 0]]])
def test_covering_number_matches_product_sets(rep):
    t, sc = setup("SL", 2, 5)
    c = t.class_of(rep)
    assert wk.covering_number(t, c, sc) == _naive_covering_number(t, c)


def test_non_generating_class():
    t, sc = setup("GL", 2, 5)
    with pytest.raises(wk.WalkError):
        wk.mixing_time(t, t.class_of([[1, 1], [0, 1]]), sc)  # stays inside SL_2(5)


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_split_regular_mixing_in_sl2(q):
    t, sc = setup("SL", 2, q)
    c = t.class_of(wk.split_regular_rep(q))
    fam = GroupFamily(Family.SL, 2)
    report = wk.mixing_time(t, c, sc, ambient=(fam, LeviShape.of(fam, (1, 1))))
    assert report.levi_bound == 5
    assert report.lower_bound_ok and report.deficit_ok
    assert report.T_l1 <= 5
    assert report.cover >= report.cover_lower_bound


def test_sl3_homology_needs_three_steps():
    t, sc = setup("SL", 3, 3)
    report = wk.mixing_time(t, t.class_of([[2, 0, 0], [0, 2, 0], [0, 0, 1]]), sc)
    assert report.T_l1 >= 3
    assert report.trajectory[0]["t"] == 0


def test_tmax():
    t, sc = setup("SL", 3, 3)
    with pytest.raises(wk.WalkError):
        wk.mixing_time(t, t.class_of([[2, 0, 0], [0, 2, 0], [0, 0, 1]]), sc, tmax=1)


def test_bound_formulas():
    sl2 = GroupFamily(Family.SL, 2)
    shape = LeviShape.of(sl2, (1, 1))
    assert wk.levi_mixing_bound(sl2, shape) == 5
    assert wk.levi_covering_threshold(sl2, shape) == 9
    cat = {b.name: b.value for b in wk.bound_catalog(GroupFamily(Family.SL, 4), None, 2)}
    assert cat["non-central mixing"] == 11
    assert cat["unipotent mixing"] == 4
    assert cat["nice-element mixing"] == 5
    _, rp = supp_constants(GroupFamily(Family.SL, 4))
    assert rp == Fraction(15, 2)
    assert cat["support mixing"] == math.ceil((2 + Fraction(2, 4)) * rp / 2) == 10


def test_split_regular_rep():
    assert wk.split_regular_rep(5) == [[2, 0], [0, 3]]
    with pytest.raises(wk.WalkError):
        wk.split_regular_rep(3)
