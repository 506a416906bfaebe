from fractions import Fraction

import pytest

from liechar import exceptdata as ex
from liechar.classgeom import dim_class


def test_g2_rows():
    rows = ex.table_rows("G2")
    assert [(r.levi_label, r.alpha) for r in rows] == [("A1", Fraction(1, 3)), ("~A1", Fraction(1, 4))]


@pytest.mark.parametrize("group,label,value", [
    ("E8", "E7", Fraction(17, 29)), ("E7", "D6", Fraction(5, 9)), ("E7", "E6", Fraction(11, 17)),
    ("E6", "A5", Fraction(1, 2)), ("F4", "B3", Fraction(1, 2)), ("F4", "C3", Fraction(7, 15)),
])
def test_lookups(group, label, value):
    assert ex.alpha_exceptional(group, label).alpha == value


def test_lookup_is_case_tolerant_on_group_only():
    assert ex.alpha_exceptional("e7", " D6 ").alpha == Fraction(5, 9)
    with pytest.raises(ex.UnknownLevi):
        ex.alpha_exceptional("E7", "d6")
    with pytest.raises(ex.UnknownLevi):
        ex.table_rows("H4")


def test_upper_bound_markers_are_consistent():
    assert ex.check_upper_markers() == []
    assert ex.alpha_exceptional("E8", "rest").is_upper_bound


def test_e7_d6_rows_recompute():
    for row in ex.E7D6_ROWS:
        assert dim_class(ex.SO12, row.jordan_label) == row.dim_uL
        assert row.jordan_label.n == 12


def test_e7_d6_maximum():
    report = ex.verify_e7_d6()
    assert report.rows_checked == 30
    assert report.max_ratio == Fraction(5, 9) == report.table_value
    assert report.argmax == "(2^6)"
    assert report.ok


def test_misprinted_row_keeps_printed_label():
    row = next(r for r in ex.E7D6_ROWS if r.printed_label)
    assert row.printed_label == "(3,2,1^6)"
    assert str(row.jordan_label) == "(3^2,1^6)"
    assert row.to_json()["printed_label"] == "(3,2,1^6)"
