import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from liechar import ffgroup as ff
from liechar import fields as fl


def table(kind, n, q):
    return ff.build_class_table(ff.GroupSpec.of(kind, n, q))


@pytest.mark.parametrize("kind,n,q,count", [
    ("GL", 2, 3, 8), ("GL", 2, 5, 24), ("GL", 3, 3, 24), ("GL", 2, 4, 15),
    ("SL", 2, 5, 9), ("SL", 2, 7, 11), ("SL", 2, 9, 13), ("SL", 3, 3, 12), ("SL", 2, 8, 9),
])
def test_class_counts(kind, n, q, count):
    t = table(kind, n, q)
    assert t.num_classes == count
    assert int(t.sizes.sum()) == t.group.order == len(t.codes)


def test_orders():
    assert ff.GroupSpec.of("GL", 3, 3).order == 11232
    assert ff.GroupSpec.of("SL", 2, 13).order == 2184


def _naive_classes(kind, n, q):
    F = fl.field_of_order(q)
    elems = []
    for entries in itertools.product(range(q), repeat=n * n):
        m = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
        d = fl.det(F, m)
        if d and (kind == "GL" or d == 1):
            elems.append(m)
    key = lambda m: tuple(x for row in m for x in row)
    seen, classes = set(), []
    for m in elems:
        if key(m) in seen:
            continue
        orbit = {key(fl.mat_mul(F, fl.mat_mul(F, g, m), fl.inverse(F, g))) for g in elems}
        seen |= orbit
        classes.append(orbit)
    return classes


@pytest.mark.parametrize("kind,n,q", [("GL", 2, 3), ("SL", 2, 5), ("SL", 2, 4)])
def test_classes_match_naive_orbits(kind, n, q):
    t = table(kind, n, q)
    naive = _naive_classes(kind, n, q)
    ours = {}
    mats = t.mats.reshape(len(t.codes), -1)
    for row, c in zip(mats, t.element_class):
        ours.setdefault(int(c), set()).add(tuple(int(x) for x in row))
    assert sorted(map(sorted, ours.values())) == sorted(map(sorted, naive))


def test_identity_class_first_and_sorted():
    t = table("GL", 2, 5)
    assert t.identity_class == 0
    keys = [(int(s), int(c)) for s, c in zip(t.sizes, t.rep_codes)]
    assert keys == sorted(keys)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_gl_invariants_separate_classes(q):
    for n in (2, 3) if q < 5 else (2,):
        t = table("GL", n, q)
        assert t.split_classes() == []
        assert len(t.class_of_invariant) == t.num_classes


@pytest.mark.parametrize("q", [5, 7, 9, 11])
def test_sl2_unipotent_classes_split(q):
    t = table("SL", 2, q)
    split = t.split_classes()
    assert len(split) == 2
    for pair in split:
        assert [int(t.sizes[i]) for i in pair] == [(q * q - 1) // 2] * 2


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([("GL", 2, 5), ("SL", 2, 7), ("GL", 3, 3), ("SL", 3, 3)]), st.data())
def test_class_size_times_centralizer_is_order(group, data):
    t = table(*group)
    i = data.draw(st.integers(0, t.num_classes - 1))
    assert int(t.sizes[i]) * ff.centralizer_order(t, t.reps[i]) == t.group.order


def test_commutant_count_matches_direct_centralizer():
    t = table("GL", 3, 3)
    F = t.group.field
    for i in range(0, t.num_classes, 3):
        assert ff.centralizer_order_gl(F, t.reps[i]) == t.cent_orders[i]


def test_structure_constants():
    t = table("SL", 2, 5)
    sc = ff.structure_constants(t)
    assert sc.mass_conserved()
    counts = sc.counts
    assert np.array_equal(counts, counts.transpose(1, 0, 2))
    sizes = t.sizes.astype(np.int64)
    assert np.array_equal(counts @ sizes, np.outer(sizes, sizes))
    e = t.identity_class
    for i in range(t.num_classes):
        assert counts[i, t.inverse_map[i], e] == sizes[i]


def test_encode_decode_round_trip():
    mats = np.array([[[1, 2], [3, 4]], [[0, 1], [4, 0]]])
    assert np.array_equal(ff.decode(5, 2, ff.encode(5, mats)), mats)
    assert ff.encode(5, mats[:1])[0] == 1 * 125 + 2 * 25 + 3 * 5 + 4
    assert ff.parse_matrix(ff.format_matrix([[1, 2], [3, 4]])) == [[1, 2], [3, 4]]


def test_group_errors():
    with pytest.raises(ValueError):
        ff.GroupSpec.of("GL", 2, 6)
    with pytest.raises(ValueError):
        ff.GroupSpec.of("PSL", 2, 5)
    with pytest.raises(ff.GuardExceeded):
        ff.build_class_table(ff.GroupSpec.of("GL", 4, 5))
    with pytest.raises(ff.GroupError):
        table("SL", 2, 5).class_of([[2, 0], [0, 2]])


# -- supp --------------------------------------------------------------------------------


def _supp_over(m, F):
    """n minus the largest eigenspace, with every eigenvalue already in F."""
    n = len(m)
    return n - max(n - fl.rank(F, fl.mat_sub_scalar(F, m, lam)) for lam in range(1, F.q))


def test_supp_of_irreducible_quadratic_via_f9():
    F3, F9 = fl.field_of_order(3), fl.field_of_order(9)
    m = [[0, 2], [1, 0]]  # charpoly x^2 + 1, irreducible over F_3
    assert ff.supp(m, F3) == 1
    assert _supp_over(m, F9) == 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 4), (3, 9), (5, 25)]), st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_supp_matches_splitting_field(fields, entries):
    p, q2 = fields
    F, E = fl.field_of_order(p), fl.field_of_order(q2)
    m = [[entries[0] % p, entries[1] % p], [entries[2] % p, entries[3] % p]]
    if fl.det(F, m) == 0:
        return
    assert ff.supp(m, F) == _supp_over(m, E)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=9, max_size=9))
def test_supp_matches_f9_when_it_splits(entries):
    F, E = fl.field_of_order(3), fl.field_of_order(9)
    m = [entries[0:3], entries[3:6], entries[6:9]]
    if fl.det(F, m) == 0:
        return
    if any(len(f) > 3 for f, _ in fl.factor_poly(F, fl.charpoly(F, m))):
        return  # an irreducible cubic needs F_27, which does not contain F_9
    assert ff.supp(m, F) == _supp_over(m, E)


def test_supp_extremes():
    F = fl.field_of_order(7)
    assert ff.supp(ff.central_homology(4, 7, 2, 3), F) == 1
    assert ff.supp([[1, 0, 0], [0, 2, 0], [0, 0, 4]], F) == 2
    assert ff.supp(fl.identity(3), F) == 0
    with pytest.raises(ff.GroupError):
        ff.supp([[1, 1], [1, 1]], F)


def test_supp_is_conjugation_invariant():
    t = table("GL", 3, 3)
    F = t.group.field
    rng = np.random.default_rng(7)
    for _ in range(30):
        x = t.mats[rng.integers(len(t.codes))].tolist()
        g = t.mats[rng.integers(len(t.codes))].tolist()
        y = fl.mat_mul(F, fl.mat_mul(F, g, x), fl.inverse(F, g))
        assert ff.supp(x, F) == ff.supp(y, F)


def test_homology_params():
    params = ff.homology_params_sl(3, 7)
    F = fl.field_of_order(7)
    assert params and all(F.mul[F.pow(mu, 2), lam] == 1 and mu != lam for mu, lam in params)
    with pytest.raises(ff.GroupError):
        ff.central_homology(2, 7, 2, 3, kind="SL")


# -- block-scalar witness ----------------------------------------------------------------


def test_witness_small_case():
    w = ff.levi_witness_sl((1, 2), 5)
    assert w.matrix == [[4, 0, 0], [0, 2, 0], [0, 0, 2]]
    assert w.expected_centralizer == 4 * 480
    F = fl.field_of_order(5)
    assert fl.det(F, w.matrix) == 1
    assert ff.centralizer_order_gl(F, w.matrix) == 1920


@pytest.mark.parametrize("sizes,q", ff.witness_cases())
def test_every_feasible_witness(sizes, q):
    w = ff.levi_witness_sl(sizes, q)
    F = fl.field_of_order(q)
    assert fl.det(F, w.matrix) == 1
    assert ff.centralizer_order_gl(F, w.matrix) == w.expected_centralizer


def test_witness_preconditions():
    with pytest.raises(ff.GroupError):
        ff.levi_witness_sl((1, 2), 7)  # N = 4 does not divide 6
    with pytest.raises(ff.GroupError):
        ff.levi_witness_sl((2, 1), 5)
