"""Dimension formulas for classical groups and their unipotent classes.

Centralizer dimensions follow the Jordan-block formulas for unipotent classes
in good characteristic.  With m_i the number of blocks
of size i and S = sum_i i*m_i^2 + 2*sum_{i<j} i*m_i*m_j:

    GL_n, SL_n : dim C(u) = S
    Sp_N       : dim C(u) = S/2 + (1/2) sum_{i odd} m_i
    SO_N       : dim C(u) = S/2 - (1/2) sum_{i odd} m_i

SL dimensions are taken equal to GL ones for class dimensions (the centre is
a torus of dimension 1 in GL and finite in SL, and it lies in every
centralizer).  Spin vs SO is not distinguished: only dimensions matter.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .partitions import Partition, conjugate


class GeometryError(ValueError):
    pass


class Family(str, enum.Enum):
    GL = "GL"
    SL = "SL"
    Sp = "Sp"
    SO_odd = "SO_odd"
    SO_even = "SO_even"

    @property
    def is_linear(self) -> bool:
        return self in (Family.GL, Family.SL)

    @property
    def is_orthogonal(self) -> bool:
        return self in (Family.SO_odd, Family.SO_even)


def parse_family(text: str) -> Family:
    aliases = {
        "GL": Family.GL, "SL": Family.SL, "SP": Family.Sp, "C": Family.Sp,
        "SO_ODD": Family.SO_odd, "B": Family.SO_odd, "SO_EVEN": Family.SO_even, "D": Family.SO_even,
    }
    key = text.strip().upper()
    if key == "SO":
        raise GeometryError("say SO_odd or SO_even")
    if key not in aliases:
        raise GeometryError(f"unknown family {text!r}")
    return aliases[key]


@dataclass(frozen=True)
class GroupFamily:
    """A classical group given by its type and natural-module dimension."""

    type: Family
    rank_param: int

    def __post_init__(self):
        object.__setattr__(self, "type", Family(self.type))
        n, t = self.rank_param, self.type
        if t.is_linear and n < 2:
            raise GeometryError(f"{t.value}_{n}: need n >= 2")
        if t is Family.Sp and (n % 2 or n < 4):
            raise GeometryError(f"Sp_{n}: need even n >= 4")
        if t is Family.SO_odd and (n % 2 == 0 or n < 7):
            raise GeometryError(f"SO_{n} (odd): need odd n >= 7")
        if t is Family.SO_even and (n % 2 or n < 8):
            raise GeometryError(f"SO_{n} (even): need even n >= 8")

    @property
    def natural_dim(self) -> int:
        return self.rank_param

    @property
    def rank(self) -> int:
        """Rank of the derived (simple) group."""
        if self.type.is_linear:
            return self.rank_param - 1
        return self.rank_param // 2

    def __str__(self) -> str:
        return f"{self.type.value}_{self.rank_param}"


def _classical_dim(kind: Family, N: int) -> int:
    """Dimension of Sp_N / SO_N for any N >= 0 (used for Levi factors too)."""
    if kind is Family.Sp:
        return N * (N + 1) // 2
    return N * (N - 1) // 2


def dim_group(f: GroupFamily) -> int:
    n = f.rank_param
    if f.type is Family.GL:
        return n * n
    if f.type is Family.SL:
        return n * n - 1
    return _classical_dim(f.type, n)


def coxeter_number(f: GroupFamily) -> int:
    """h = dim G / rank - 1, computed on the simple group (SL for type A)."""
    simple = GroupFamily(Family.SL, f.rank_param) if f.type is Family.GL else f
    d, r = dim_group(simple), simple.rank
    if d % r:
        raise GeometryError(f"dim {d} not divisible by rank {r}")
    return d // r - 1


def gl_centralizer_sum(p: Partition) -> int:
    """sum_i i m_i^2 + 2 sum_{i<j} i m_i m_j, from the multiplicities."""
    mult = sorted(p.multiplicities.items())
    total = 0
    for a, (i, mi) in enumerate(mult):
        total += i * mi * mi
        for _, mj in mult[a + 1:]:
            total += 2 * i * mi * mj
    return total


def check_parity(kind: Family, p: Partition) -> None:
    """Sp: odd block sizes need even multiplicity; SO: even block sizes do."""
    if kind is Family.Sp:
        bad = [i for i, m in p.multiplicities.items() if i % 2 == 1 and m % 2]
    elif kind.is_orthogonal:
        bad = [i for i, m in p.multiplicities.items() if i % 2 == 0 and m % 2]
    else:
        return
    if bad:
        raise GeometryError(f"{p} is not a {kind.value} Jordan type (block sizes {bad} have odd multiplicity)")


def is_valid_type(kind: Family, p: Partition) -> bool:
    try:
        check_parity(kind, p)
    except GeometryError:
        return False
    return True


def _half(value: int, what: str) -> int:
    if value % 2:
        raise GeometryError(f"non-integral centralizer dimension for {what}")
    return value // 2


def _dim_cent(kind: Family, p: Partition) -> int:
    s = gl_centralizer_sum(p)
    if kind.is_linear:
        return s
    check_parity(kind, p)
    odd = sum(m for i, m in p.multiplicities.items() if i % 2 == 1)
    if kind is Family.Sp:
        return _half(s + odd, f"Sp type {p}")
    return _half(s - odd, f"SO type {p}")


def dim_cent_unipotent(f: GroupFamily, p: Partition) -> int:
    """Centralizer dimension of a unipotent element of Jordan type p.

    For SL the GL value is returned; :func:`dim_class` subtracts it from n^2.
    """
    if p.n != f.natural_dim:
        raise GeometryError(f"{p} does not partition {f.natural_dim}")
    return _dim_cent(f.type, p)


def _dim_class(kind: Family, p: Partition) -> int:
    N = p.n
    if kind.is_linear:
        return N * N - _dim_cent(kind, p)
    return _classical_dim(kind, N) - _dim_cent(kind, p)


def dim_class(f: GroupFamily, p: Partition) -> int:
    if p.n != f.natural_dim:
        raise GeometryError(f"{p} does not partition {f.natural_dim}")
    return _dim_class(f.type, p)


# -- Levi subgroups -------------------------------------------------------------


@dataclass(frozen=True)
class LeviShape:
    """L = GL_{n_1} x ... x GL_{n_m} (x Sp/SO_c for the classical families).

    ``classical_factor`` is the natural-module dimension c of the residual
    classical factor, with 2*sum(n_i) + c equal to the ambient dimension.
    """

    family: GroupFamily
    gl_factors: tuple[int, ...]
    classical_factor: int = 0

    def __post_init__(self):
        factors = tuple(int(x) for x in self.gl_factors)
        object.__setattr__(self, "gl_factors", factors)
        if any(x < 1 for x in factors):
            raise GeometryError("GL factor sizes must be positive")
        N, c, t = self.family.natural_dim, self.classical_factor, self.family.type
        if t.is_linear:
            if c != 0 or sum(factors) != N:
                raise GeometryError(f"GL factors {factors} must sum to {N}")
            return
        if c < 0 or 2 * sum(factors) + c != N:
            raise GeometryError(f"2*sum{factors} + {c} != {N}")
        if (t is Family.SO_odd) != (c % 2 == 1):
            raise GeometryError(f"classical factor {c} has the wrong parity for {t.value}")

    @classmethod
    def of(cls, family: GroupFamily, gl_factors: Sequence[int]) -> LeviShape:
        """Infer the classical factor from the ambient dimension."""
        factors = tuple(gl_factors)
        c = 0 if family.type.is_linear else family.natural_dim - 2 * sum(factors)
        return cls(family, factors, c)

    @property
    def classical_kind(self) -> Family | None:
        t = self.family.type
        return None if t.is_linear else t

    def dim(self) -> int:
        """Dimension of the Levi subgroup as an algebraic group.

        GL ambient: sum n_i^2.  SL ambient: sum n_i^2 - 1.  Sp/SO ambient:
        sum n_i^2 + dim of the classical factor.
        """
        base = sum(x * x for x in self.gl_factors)
        if self.family.type is Family.GL:
            return base
        if self.family.type is Family.SL:
            return base - 1
        return base + _classical_dim(self.family.type, self.classical_factor)

    def is_torus(self) -> bool:
        if any(x > 1 for x in self.gl_factors):
            return False
        c = self.classical_factor
        if self.family.type is Family.Sp:
            return c == 0
        if self.family.type is Family.SO_odd:
            return c <= 1
        if self.family.type is Family.SO_even:
            return c <= 2
        return True

    def is_whole_group(self) -> bool:
        if self.family.type.is_linear:
            return len(self.gl_factors) == 1
        return not self.gl_factors

    def to_json(self) -> dict:
        return {
            "family": self.family.type.value,
            "n": self.family.rank_param,
            "gl_factors": list(self.gl_factors),
            "classical_factor": self.classical_factor,
        }

    def __str__(self) -> str:
        body = " x ".join(f"GL_{x}" for x in self.gl_factors)
        if self.classical_kind is not None and self.classical_factor:
            name = "Sp" if self.classical_kind is Family.Sp else "SO"
            body = (body + " x " if body else "") + f"{name}_{self.classical_factor}"
        return f"{self.family} > {body or 'trivial'}"


@dataclass(frozen=True)
class JordanType:
    """Per-factor Jordan types of a unipotent element of a Levi subgroup."""

    gl_parts: tuple[Partition, ...]
    classical: Partition = Partition(())

    def is_trivial(self) -> bool:
        return all(p.is_trivial() for p in self.gl_parts) and self.classical.is_trivial()

    def to_json(self) -> dict:
        return {"gl": [p.to_json() for p in self.gl_parts], "classical": self.classical.to_json()}


def merged_ambient_type(shape: LeviShape, j: JordanType) -> Partition:
    """Jordan type of u in the ambient group.

    Inside Sp/SO a GL_k factor acts on W + W*, so each of its blocks appears
    twice; blocks of the classical factor are added as they are.
    """
    _check_jordan(shape, j)
    blocks: list[int] = []
    copies = 1 if shape.family.type.is_linear else 2
    for p in j.gl_parts:
        blocks.extend(list(p.parts) * copies)
    blocks.extend(j.classical.parts)
    return Partition.of(blocks)


def _check_jordan(shape: LeviShape, j: JordanType) -> None:
    if len(j.gl_parts) != len(shape.gl_factors):
        raise GeometryError("Jordan type has the wrong number of GL factors")
    for p, size in zip(j.gl_parts, shape.gl_factors):
        if p.n != size:
            raise GeometryError(f"{p} does not partition GL factor size {size}")
    if j.classical.n != shape.classical_factor:
        raise GeometryError(f"{j.classical} does not partition classical factor {shape.classical_factor}")
    if shape.classical_kind is not None:
        check_parity(shape.classical_kind, j.classical)


def dim_class_in_levi(shape: LeviShape, j: JordanType) -> tuple[int, int]:
    """(dim u^L, dim u^G) for a unipotent u of the Levi with Jordan type j."""
    merged = merged_ambient_type(shape, j)
    dim_l = sum(_dim_class(Family.GL, p) for p in j.gl_parts)
    if shape.classical_kind is not None and shape.classical_factor:
        dim_l += _dim_class(shape.classical_kind, j.classical)
    return dim_l, dim_class(shape.family, merged)


def support_upper_bounds(f: GroupFamily, p: Partition) -> tuple[int, int]:
    """(s, bound) with s = dim [V,u] = N - #blocks.

    GL/SL: dim u^G <= s(2N - s).  Sp/SO: dim u^G <= s(2N - s + 1)/2, which for
    N = 2n is the s(4n - s + 1)/2 of Liebeck-Shalev.
    """
    if p.n != f.natural_dim:
        raise GeometryError(f"{p} does not partition {f.natural_dim}")
    N = f.natural_dim
    s = N - len(p)
    if f.type.is_linear:
        return s, s * (2 * N - s)
    return s, s * (2 * N - s + 1) // 2


def conjugate_square_sum(p: Partition) -> int:
    """sum_k (p'_k)^2, which equals :func:`gl_centralizer_sum`."""
    return sum(x * x for x in conjugate(p).parts)
