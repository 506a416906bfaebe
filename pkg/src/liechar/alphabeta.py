"""The exponents alpha(L) and beta(n_1,...,n_m), their closed forms and bounds.

Everything here is exact (``fractions.Fraction``); no floating point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import classgeom as cg
from .classgeom import Family, GroupFamily, JordanType, LeviShape
from .partitions import Partition, conjugate, enumerate_partitions

BETA_GUARD = 14
ALPHA_GUARD = 14


class SearchGuardError(ValueError):
    pass


@dataclass(frozen=True)
class AlphaResult:
    value: Fraction
    witness: JordanType | None
    levi: LeviShape
    dims: tuple[int, int] = (0, 0)

    def to_json(self) -> dict:
        return {
            "value": frac_json(self.value),
            "levi": self.levi.to_json(),
            "witness": None if self.witness is None else self.witness.to_json(),
            "dim_uL": self.dims[0],
            "dim_uG": self.dims[1],
        }


@dataclass(frozen=True)
class BetaResult:
    value: Fraction
    witness_matrix: tuple[tuple[int, ...], ...]
    sizes: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "value": frac_json(self.value),
            "sizes": list(self.sizes),
            "witness": [list(row) for row in self.witness_matrix],
        }


def frac_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


# -- beta ---------------------------------------------------------------------


def _padded(p: Partition, width: int) -> tuple[int, ...]:
    return p.parts + (0,) * (width - len(p.parts))


def _beta_ratio(rows: Sequence[tuple[int, ...]], sizes: Sequence[int]) -> Fraction | None:
    n = sum(sizes)
    num = sum(ni * ni - sum(a * a for a in row) for ni, row in zip(sizes, rows))
    cols = [sum(col) for col in zip(*rows)]
    den = n * n - sum(c * c for c in cols)
    if den == 0:
        return None
    return Fraction(num, den)


def beta_candidates(sizes: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All admissible multiplicity matrices, rows padded to n columns.

    Rows are partitions of n_i in reverse-lexicographic order; matrices come in
    the product order of the rows.  The all-trivial matrix (every row a single
    part) is skipped since it violates max_i a_{i2} > 0.
    """
    n = sum(sizes)
    per_row = [[_padded(p, n) for p in enumerate_partitions(k)] for k in sizes]
    for rows in itertools.product(*per_row):
        if n >= 2 and max(row[1] for row in rows) > 0:
            yield rows


def _normalise_sizes(sizes: Sequence[int]) -> tuple[int, ...]:
    sizes = tuple(int(x) for x in sizes)
    if not sizes or any(x < 1 for x in sizes):
        raise ValueError(f"sizes must be positive integers: {sizes}")
    return sizes


def beta_bruteforce(sizes: Sequence[int]) -> BetaResult:
    """Exhaustive maximisation over multiplicity matrices.

    Ties keep the first maximiser in :func:`beta_candidates` order.
    """
    sizes = _normalise_sizes(sizes)
    n = sum(sizes)
    if n > BETA_GUARD:
        raise SearchGuardError(f"sum of sizes {n} exceeds search guard {BETA_GUARD}")
    if max(sizes) == 1:
        return BetaResult(Fraction(0), tuple(_padded(Partition((1,)), n) for _ in sizes), sizes)
    best, witness = None, None
    for rows in beta_candidates(sizes):
        value = _beta_ratio(rows, sizes)
        if best is None or value > best:
            best, witness = value, rows
    return BetaResult(best, witness, sizes)


def beta_maximisers(sizes: Sequence[int]) -> list[tuple[tuple[int, ...], ...]]:
    """Every multiplicity matrix attaining beta."""
    sizes = _normalise_sizes(sizes)
    target = beta_bruteforce(sizes).value
    return [rows for rows in beta_candidates(sizes) if _beta_ratio(rows, sizes) == target]


def beta_closed_m2(n1: int, n2: int) -> Fraction:
    """beta(n1, n2) = (n1 - 1)/(n - t) for n1 >= n2, with t = 2 iff n1 == n2."""
    if n2 > n1:
        n1, n2 = n2, n1
    if n2 < 1 or n1 < 2:
        raise ValueError(f"closed form needs n1 >= 2, n2 >= 1 (got {n1}, {n2})")
    t = 2 if n1 == n2 else 1
    return Fraction(n1 - 1, n1 + n2 - t)


def sandwich_bounds(sizes: Sequence[int]) -> tuple[Fraction, Fraction]:
    """((n_max - 1)/(n - t), n_max/n); (0, 0) when every n_i is 1."""
    sizes = _normalise_sizes(sizes)
    top = max(sizes)
    if top == 1:
        return Fraction(0), Fraction(0)
    n = sum(sizes)
    t = sizes.count(top)
    return Fraction(top - 1, n - t), Fraction(top, n)


def check_sandwich(sizes: Sequence[int]) -> bool:
    lo, hi = sandwich_bounds(sizes)
    value = beta_bruteforce(sizes).value
    return lo <= value <= hi


def is_m2_equality_case(rows: Sequence[Sequence[int]], sizes: Sequence[int]) -> bool:
    """The equality cases for m = 2, restated on multiplicity rows.

    Rows are conjugates of the Jordan types of u_1 and u_2 (sizes ordered with
    n1 >= n2).  (a) n1 = n2 and equal Jordan types; (b) n1 > n2, u_1 a
    transvection and u_2 = 1; (c) n1 = n2 + 1 and u_2's blocks are u_1's with
    one block shortened by one.
    """
    (n1, n2), (r1, r2) = sizes, rows
    if n1 < n2:
        raise ValueError("order sizes with n1 >= n2")
    j1 = conjugate(Partition.of(r1))
    j2 = conjugate(Partition.of(r2))
    if j1.is_trivial() and j2.is_trivial():
        return False
    if n1 == n2:
        return j1 == j2
    if j1 == Partition.of([2] + [1] * (n1 - 2)) and j2.is_trivial():
        return True
    if n1 == n2 + 1:
        for k, block in enumerate(j1.parts):
            shortened = list(j1.parts)
            shortened[k] = block - 1
            if Partition.of(shortened) == j2 and (k + 1 == len(j1) or j1.parts[k + 1] <= block - 1):
                return True
    return False


def h_value(p: Partition) -> Fraction:
    """h(alpha) = (A^2 - sum a_i^2)/A for a partition alpha of A."""
    A = p.n
    return Fraction(A * A - sum(a * a for a in p.parts), A)


def partition_sum(p: Partition, q: Partition) -> Partition:
    width = max(len(p), len(q))
    return Partition(tuple(a + b for a, b in zip(_padded(p, width), _padded(q, width))))


def conjecture_value(sizes: Sequence[int]) -> Fraction:
    return sandwich_bounds(sizes)[0]


# -- alpha --------------------------------------------------------------------


def _jordan_types(shape: LeviShape) -> Iterator[JordanType]:
    gl_options = [enumerate_partitions(k) for k in shape.gl_factors]
    c = shape.classical_factor
    if shape.classical_kind is None or c == 0:
        classical_options = [Partition(())]
    else:
        classical_options = [p for p in enumerate_partitions(c) if cg.is_valid_type(shape.classical_kind, p)]
    for gl_parts in itertools.product(*gl_options):
        for cl in classical_options:
            yield JordanType(tuple(gl_parts), cl)


def alpha_classical(shape: LeviShape) -> AlphaResult:
    """max over nontrivial unipotent u of L of dim u^L / dim u^G; 0 for a torus."""
    if shape.family.natural_dim > ALPHA_GUARD:
        raise SearchGuardError(f"natural dimension {shape.family.natural_dim} exceeds guard {ALPHA_GUARD}")
    if shape.is_torus():
        return AlphaResult(Fraction(0), None, shape)
    best, witness, dims = None, None, (0, 0)
    for j in _jordan_types(shape):
        if j.is_trivial():
            continue
        d_l, d_g = cg.dim_class_in_levi(shape, j)
        if d_g == 0:
            continue
        value = Fraction(d_l, d_g)
        if best is None or value > best:
            best, witness, dims = value, j, (d_l, d_g)
    if best is None:
        return AlphaResult(Fraction(0), None, shape)
    return AlphaResult(best, witness, shape, dims)


def ratio_bound(shape: LeviShape) -> Fraction:
    """(1 + dim L / dim G)/2."""
    return Fraction(1, 2) * (1 + Fraction(shape.dim(), cg.dim_group(shape.family)))


def check_ratio_bound(shape: LeviShape) -> tuple[bool, Fraction]:
    """(alpha(L) <= (1 + dim L/dim G)/2, slack)."""
    slack = ratio_bound(shape) - alpha_classical(shape).value
    return slack >= 0, slack


def levi_shapes(family: GroupFamily, proper: bool = True) -> list[LeviShape]:
    """Every Levi shape of the family up to reordering of the GL factors.

    GL factors are listed as partitions (decreasing).  For SO_even the GL_1 x
    SO_2 ambiguity is kept: shapes with classical factor 2 are listed too.
    """
    N = family.natural_dim
    shapes: list[LeviShape] = []
    if family.type.is_linear:
        for p in enumerate_partitions(N):
            shapes.append(LeviShape(family, p.parts, 0))
    else:
        odd = family.type is Family.SO_odd
        for total in range(0, N // 2 + 1):
            c = N - 2 * total
            if c < 0 or (c % 2 == 1) != odd:
                continue
            factor_lists = [()] if total == 0 else [p.parts for p in enumerate_partitions(total)]
            for factors in factor_lists:
                shapes.append(LeviShape(family, factors, c))
    if proper:
        shapes = [s for s in shapes if not s.is_whole_group()]
    return shapes


def classical_families(max_dim: int) -> list[GroupFamily]:
    out = []
    for n in range(2, max_dim + 1):
        out.append(GroupFamily(Family.GL, n))
        out.append(GroupFamily(Family.SL, n))
    for n in range(4, max_dim + 1, 2):
        out.append(GroupFamily(Family.Sp, n))
    for n in range(7, max_dim + 1, 2):
        out.append(GroupFamily(Family.SO_odd, n))
    for n in range(8, max_dim + 1, 2):
        out.append(GroupFamily(Family.SO_even, n))
    return out


def gl_regular_ratio(n: int) -> Fraction:
    return Fraction(n - 2, n - 1)


# -- constants ----------------------------------------------------------------


def supp_constants(f: GroupFamily) -> tuple[Fraction, Fraction]:
    """(c, r') for SL_{r+1}, Sp_{2r}, Spin_{2r}, Spin_{2r+1}; c * r' = r."""
    r = f.rank
    if f.type is Family.GL:
        raise ValueError("use SL for type A")
    if f.type is Family.SL:
        c, rp = Fraction(r + 1, 2 * r + 4), Fraction(r * (2 * r + 4), r + 1)
    elif f.type is Family.Sp:
        c, rp = Fraction(r, 4 * r + 2), Fraction(4 * r + 2)
    elif f.type is Family.SO_even:
        c, rp = Fraction(r, 4 * r - 2), Fraction(4 * r - 2)
    else:
        c, rp = Fraction(1, 4), Fraction(4 * r)
    assert c * rp == r
    return c, rp


# Simple types of rank r beyond the four classical series, with
# (|W|, dim, largest |A(u)| for the adjoint group).
_EXCEPTIONAL = {
    2: [("G2", 12, 14, 6)],
    4: [("F4", 1152, 52, 24)],
    6: [("E6", 51840, 78, 6)],
    7: [("E7", 2903040, 133, 6)],
    8: [("E8", 696729600, 248, 120)],
}


def weyl_max_order(r: int) -> int:
    """Largest Weyl group order among simple groups of rank r."""
    orders = [math.factorial(r + 1)]
    if r >= 2:
        orders.append(2**r * math.factorial(r))
    orders += [w for _, w, _, _ in _EXCEPTIONAL.get(r, [])]
    return max(orders)


def max_simple_dim(r: int) -> int:
    dims = [r * r + 2 * r]
    if r >= 2:
        dims.append(2 * r * r + r)
    dims += [d for _, _, d, _ in _EXCEPTIONAL.get(r, [])]
    return max(dims)


def component_group_bound(r: int) -> int:
    """2^ceil(sqrt(2r+1)) (classical bound), raised to exceptional A(u) orders."""
    classical = 2 ** _ceil_sqrt(2 * r + 1)
    return max([classical] + [a for _, _, _, a in _EXCEPTIONAL.get(r, [])])


def _ceil_sqrt(x: int) -> int:
    s = math.isqrt(x)
    return s if s * s == x else s + 1


@dataclass(frozen=True)
class FBound:
    r: int
    q0: int
    weyl: int
    component_bound: int
    max_dim: int
    general: Fraction
    closed_form: int | None

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "q0": self.q0,
            "W": self.weyl,
            "B": self.component_bound,
            "d": self.max_dim,
            "general": frac_json(self.general),
            "closed_form": self.closed_form,
            "closed_form_applies": self.closed_form is not None,
        }


def f_bound(r: int, q0: int) -> FBound:
    """W(r)^2 B(r) ((q0+1)/(q0-1))^{(d(r)-r)/2}, plus 2^{2r+ceil(sqrt(2r))+3}(r!)^2
    when r >= 9 and q0 >= r^2 + 1.

    Irrational exponents are rounded up, which only enlarges the bound.
    """
    if r < 1 or q0 < 2:
        raise ValueError("need r >= 1 and q0 >= 2")
    W, B, d = weyl_max_order(r), component_group_bound(r), max_simple_dim(r)
    # d(r) - r is even for every simple type
    factor = Fraction(q0 + 1, q0 - 1) ** ((d - r) // 2)
    general = W * W * B * factor
    closed = None
    if r >= 9 and q0 >= r * r + 1:
        closed = 2 ** (2 * r + _ceil_sqrt(2 * r) + 3) * math.factorial(r) ** 2
    return FBound(r, q0, W, B, d, general, closed)

