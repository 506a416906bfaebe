"""Printed alpha-values for exceptional groups and the E7 > D6 class table.

Labels use ``~`` for short-root subsystems (``~A1`` is A~1) and a trailing
``'`` for the second E7 Levi of type A5.  Entries of the form "L' has a simple
factor X" are flagged ``family=True``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classgeom import Family, dim_class, GroupFamily
from .partitions import Partition, parse_partition


class UnknownLevi(KeyError):
    pass


@dataclass(frozen=True)
class ExceptionalAlphaEntry:
    group: str
    levi_label: str
    alpha: Fraction
    is_upper_bound: bool = False
    family: bool = False

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "levi": self.levi_label,
            "alpha": {"num": self.alpha.numerator, "den": self.alpha.denominator},
            "is_upper_bound": self.is_upper_bound,
            "family": self.family,
        }


def _row(group: str, items) -> tuple[ExceptionalAlphaEntry, ...]:
    out = []
    for label, num, den, *flags in items:
        out.append(ExceptionalAlphaEntry(group, label, Fraction(num, den), "le" in flags, "fam" in flags))
    return tuple(out)


ALPHA_TABLE: dict[str, tuple[ExceptionalAlphaEntry, ...]] = {
    "E8": _row("E8", [
        ("E7", 17, 29), ("D7", 9, 23), ("E6", 11, 29, "fam"), ("D6", 9, 29), ("A7", 15, 56),
        ("D5", 7, 29, "fam"), ("A6", 5, 23, "fam"), ("A5", 4, 23, "fam"), ("D4", 5, 29, "fam"),
        ("rest", 1, 6, "le"),
    ]),
    "E7": _row("E7", [
        ("E6", 11, 17), ("D6", 5, 9), ("D5", 7, 17, "fam"), ("A6", 5, 13), ("A5", 4, 13),
        ("A5'", 1, 3, "fam"), ("D4", 5, 17, "fam"), ("A4", 1, 4, "fam", "le"), ("A3", 1, 5, "fam", "le"),
        ("rest", 1, 6, "le"),
    ]),
    "E6": _row("E6", [
        ("D5", 7, 11), ("A5", 1, 2), ("D4", 5, 11), ("A4", 3, 8, "fam"), ("A3", 3, 11, "fam"),
        ("A2", 7, 27, "fam", "le"), ("A1^k", 3, 20, "le"),
    ]),
    "F4": _row("F4", [
        ("B3", 1, 2), ("C3", 7, 15), ("A2~A1", 1, 4), ("A2", 1, 4), ("~A2A1", 2, 9), ("~A2", 1, 5),
        ("A1~A1", 1, 7), ("A1", 1, 8), ("~A1", 1, 11),
    ]),
    "G2": _row("G2", [("A1", 1, 3), ("~A1", 1, 4)]),
}


def alpha_exceptional(group: str, levi_label: str) -> ExceptionalAlphaEntry:
    group = group.strip().upper()
    for entry in ALPHA_TABLE.get(group, ()):
        if entry.levi_label == levi_label.strip():
            return entry
    raise UnknownLevi(f"no entry for {group} / {levi_label!r}")


def table_rows(group: str) -> tuple[ExceptionalAlphaEntry, ...]:
    key = group.strip().upper()
    if key not in ALPHA_TABLE:
        raise UnknownLevi(f"unknown exceptional group {group!r}")
    return ALPHA_TABLE[key]


def check_upper_markers() -> list[str]:
    """Each "<= x" entry must not exceed the row's smallest exact value."""
    problems = []
    for group, rows in ALPHA_TABLE.items():
        exact = [e.alpha for e in rows if not e.is_upper_bound]
        for e in rows:
            if e.is_upper_bound and exact and e.alpha > min(exact):
                problems.append(f"{group} {e.levi_label}: bound {e.alpha} exceeds exact minimum {min(exact)}")
    return problems


# -- E7 > D6 ---------------------------------------------------------------------


@dataclass(frozen=True)
class E7D6Row:
    jordan_label: Partition
    variant: int  # 0 unless the printed table lists a primed twin
    e7_class_label: str
    dim_uL: int
    dim_uG: int
    printed_label: str = ""

    @property
    def label(self) -> str:
        return str(self.jordan_label) + ("'" * self.variant)

    def to_json(self) -> dict:
        return {
            "jordan": self.jordan_label.to_json(),
            "variant": self.variant,
            "e7_class": self.e7_class_label,
            "dim_uL": self.dim_uL,
            "dim_uG": self.dim_uG,
            "printed_label": self.printed_label or self.label,
        }


_E7D6_RAW = [
    ("2^2,1^8", 0, "A1", 18, 34),
    ("3,1^9", 0, "A1^2", 20, 52),
    ("2^4,1^4", 0, "A1^2", 28, 52),
    ("2^6", 0, "(A1^3)^(1)", 30, 54),
    ("2^6", 1, "(A1^3)^(2)", 30, 64),
    ("3,2^2,1^5", 0, "(A1^3)^(2)", 32, 64),
    ("3,2^4,1", 0, "A1^4", 36, 70),
    # printed as (3,2,1^6), which sums to 11; regular A2 in D6 is (3^2,1^6)
    ("3^2,1^6", 0, "A2", 34, 66, "(3,2,1^6)"),
    ("3^2,2^2,1^2", 0, "A2A1", 40, 76),
    ("3^3,1^3", 0, "A2A1^2", 42, 82),
    ("3^4", 0, "A2^2", 44, 84),
    ("4^2,1^4", 0, "A3", 44, 84),
    ("5,1^7", 0, "A3", 36, 84),
    ("4^2,2^2", 0, "(A3A1)^(1)", 46, 86),
    ("4^2,2^2", 1, "(A3A1)^(2)", 46, 92),
    ("5,2^2,1^3", 0, "(A3A1)^(1)", 44, 86),
    ("4^2,3,1", 0, "A3A1^2", 48, 94),
    ("5,3^2,1", 0, "A3A2", 50, 98),
    ("5^2,1^2", 0, "A4", 52, 100),
    ("6^2", 0, "(A5)^(1)", 54, 102),
    ("6^2", 1, "(A5)^(2)", 54, 108),
    ("7,1^5", 0, "D4", 48, 96),
    ("5,3,1^4", 0, "D4(a1)", 46, 94),
    ("7,2^2,1", 0, "D4A1", 52, 102),
    ("5,3,2^2", 0, "D4(a1)A1", 48, 96),
    ("9,1^3", 0, "D5", 56, 112),
    ("7,3,1^2", 0, "D5(a1)", 54, 106),
    ("11,1", 0, "D6", 60, 118),
    ("9,3", 0, "D6(a1)", 58, 114),
    ("7,5", 0, "D6(a2)", 56, 110),
]

E7D6_ROWS: tuple[E7D6Row, ...] = tuple(
    E7D6Row(parse_partition(label), variant, cls, dl, dg, *printed) for label, variant, cls, dl, dg, *printed in _E7D6_RAW
)

SO12 = GroupFamily(Family.SO_even, 12)


class ConsistencyError(AssertionError):
    pass


@dataclass(frozen=True)
class E7D6Report:
    rows_checked: int
    max_ratio: Fraction
    argmax: str
    table_value: Fraction

    @property
    def ok(self) -> bool:
        return self.max_ratio == self.table_value

    def to_json(self) -> dict:
        return {
            "rows_checked": self.rows_checked,
            "max_ratio": {"num": self.max_ratio.numerator, "den": self.max_ratio.denominator},
            "argmax": self.argmax,
            "printed_E7_D6": {"num": self.table_value.numerator, "den": self.table_value.denominator},
            "ok": self.ok,
        }


def verify_e7_d6() -> E7D6Report:
    """Recompute every dim u^L from the SO_12 formula and locate the max ratio."""
    best, arg = None, None
    for row in E7D6_ROWS:
        recomputed = dim_class(SO12, row.jordan_label)
        if recomputed != row.dim_uL:
            raise ConsistencyError(f"row {row.label}: stored dim u^L {row.dim_uL}, SO_12 formula gives {recomputed}")
        if not row.dim_uL < row.dim_uG or row.dim_uL % 2 or row.dim_uG % 2:
            raise ConsistencyError(f"row {row.label}: dimensions ({row.dim_uL}, {row.dim_uG}) not even and increasing")
        ratio = Fraction(row.dim_uL, row.dim_uG)
        if best is None or ratio > best:
            best, arg = ratio, row.label
    report = E7D6Report(len(E7D6_ROWS), best, arg, alpha_exceptional("E7", "D6").alpha)
    if not report.ok:
        raise ConsistencyError(f"max ratio {best} differs from the E7/D6 table entry {report.table_value}")
    return report
