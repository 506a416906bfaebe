"""Character tables by simultaneous diagonalisation of the class-sum algebra.

With a_{ijk} the class multiplication coefficients, the central character
w_chi(K_k) = |C_k| chi(z_k) / chi(1) satisfies

    sum_k a_{ijk} w(K_k) = w(K_i) w(K_j),

so w is a common right eigenvector of the matrices A_i[j, k] = a_{ijk}.
A random real combination of the A_i separates all characters; the
normalisation w(K_1) = 1 and sum_k |C_k| |chi(z_k)|^2 = |G| then give chi(1).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .alphabeta import alpha_classical, f_bound
from .classgeom import Family, GroupFamily, LeviShape
from .ffgroup import (
    CHUNK, ClassTable, GroupError, GroupSpec, GuardExceeded, StructureConstants, build_class_table,
    decode, encode, gl_order, structure_constants, vmatmul,
)
from .fields import Matrix

SEED = 20240917
MAX_RETRIES = 5
MAX_CLASSES = 400
CHARTABLE_ORDER_GUARD = 500_000
ORTHO_TOL = 1e-8
DEGREE_TOL = 1e-6


class CharacterTableError(RuntimeError):
    pass


@dataclass(eq=False)
class CharTable:
    class_table: ClassTable
    values: np.ndarray = field(repr=False)  # characters x classes
    degrees: list[int]
    degree_residual: float
    ortho_residual: float
    seed: int
    attempts: int

    @property
    def group(self) -> GroupSpec:
        return self.class_table.group

    def __len__(self) -> int:
        return len(self.degrees)

    def degree_multiset(self) -> dict[int, int]:
        return dict(sorted(Counter(self.degrees).items()))

    def column_residual(self) -> float:
        sizes = self.class_table.sizes.astype(float)
        gram = self.values.conj().T @ self.values  # sum over chi of conj(chi(a)) chi(b)
        expected = np.diag(self.group.order / sizes)
        return float(np.max(np.abs(gram - expected)) / self.group.order)

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "degrees": self.degrees,
            "class_sizes": [int(s) for s in self.class_table.sizes],
            "values": [[[round(float(v.real), 12), round(float(v.imag), 12)] for v in row] for row in self.values],
            "orthogonality_residual": self.ortho_residual,
            "degree_residual": self.degree_residual,
            "seed": self.seed,
        }


def _orthogonality_residual(values: np.ndarray, sizes: np.ndarray, order: int) -> float:
    gram = (values * sizes) @ values.conj().T / order
    return float(np.max(np.abs(gram - np.eye(len(values)))))


def _separated(eigvals: np.ndarray) -> bool:
    scale = max(1.0, float(np.max(np.abs(eigvals))))
    diffs = np.abs(eigvals[:, None] - eigvals[None, :])
    np.fill_diagonal(diffs, np.inf)
    return float(np.min(diffs)) > 1e-7 * scale


def character_table(t: ClassTable, sc: StructureConstants | None = None, seed: int = SEED) -> CharTable:
    g = t.group
    if t.num_classes > MAX_CLASSES:
        raise GuardExceeded(f"{g} has {t.num_classes} classes, guard {MAX_CLASSES}")
    sc = sc or structure_constants(t)
    A = sc.counts.astype(float)  # A[i] is the matrix of multiplication by K_i
    sizes = t.sizes.astype(float)
    c, e = t.num_classes, t.identity_class
    rng = np.random.default_rng(seed)
    for attempt in range(1, MAX_RETRIES + 1):
        weights = rng.standard_normal(c)
        M = np.tensordot(weights, A, axes=1)
        eigvals, vecs = np.linalg.eig(M)
        if not _separated(eigvals):
            continue
        W = (vecs / vecs[e]).T  # row r: w_r(K_k), normalised so w(K_1) = 1
        # every row must be a common eigenvector of all the A_i, with eigenvalue w(K_i)
        resid = max(
            float(np.max(np.abs(A[i] @ W.T - W.T * W[:, i]))) / max(1.0, float(sizes[i]))
            for i in range(c)
        )
        if resid > 1e-6 * c:
            continue
        deg_real = np.sqrt(g.order / np.sum(np.abs(W) ** 2 / sizes, axis=1))
        degrees = np.rint(deg_real).astype(int)
        deg_resid = float(np.max(np.abs(deg_real - degrees)))
        if deg_resid > DEGREE_TOL:
            raise CharacterTableError(f"{g}: degree rounding residual {deg_resid:.3g}")
        values = degrees[:, None] * W / sizes
        order = _row_order(values, degrees, e)
        values, degrees = values[order], [int(d) for d in degrees[order]]
        if sum(d * d for d in degrees) != g.order:
            raise CharacterTableError(f"{g}: sum of squared degrees {sum(d * d for d in degrees)} != {g.order}")
        ortho = _orthogonality_residual(values, t.sizes, g.order)
        if ortho > ORTHO_TOL:
            raise CharacterTableError(f"{g}: orthogonality residual {ortho:.3g}")
        return CharTable(t, values, degrees, deg_resid, ortho, seed, attempt)
    raise CharacterTableError(f"{g}: eigenvalues stayed clustered after {MAX_RETRIES} random combinations")


def _row_order(values: np.ndarray, degrees: np.ndarray, e: int) -> list[int]:
    trivial = [r for r in range(len(values)) if np.allclose(values[r], 1.0, atol=1e-6)]
    if len(trivial) != 1:
        raise CharacterTableError("could not single out the trivial character")

    def key(r: int):
        rounded = tuple((round(float(v.real), 6), round(float(v.imag), 6)) for v in values[r])
        return (r != trivial[0], int(degrees[r]), rounded)

    return sorted(range(len(values)), key=key)


def character_table_for(g: GroupSpec, seed: int = SEED) -> CharTable:
    if g.order > CHARTABLE_ORDER_GUARD:
        raise GuardExceeded(f"|{g}| = {g.order} exceeds the character-table guard {CHARTABLE_ORDER_GUARD}")
    return character_table(build_class_table(g), seed=seed)


def generic_gl2_degrees(q: int) -> dict[int, int]:
    if q < 3:
        raise ValueError("q >= 3")
    out: Counter[int] = Counter()
    out[1] += q - 1
    out[q] += q - 1
    out[q + 1] += (q - 1) * (q - 2) // 2
    out[q - 1] += q * (q - 1) // 2
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class ZetaValue:
    s: float
    value: float

    @property
    def minus_one(self) -> float:
        return self.value - 1.0

    def to_json(self) -> dict:
        return {"s": self.s, "value": self.value, "minus_one": self.minus_one}


def zeta(degrees: CharTable | dict[int, int] | Sequence[int], s: float) -> ZetaValue:
    """sum over irreducible chi of chi(1)^(-s); accepts a table, a {degree: mult} map or a list."""
    if s <= 0:
        raise ValueError("s must be positive")
    if isinstance(degrees, CharTable):
        mult = degrees.degree_multiset()
    elif isinstance(degrees, dict):
        mult = degrees
    else:
        mult = Counter(degrees)
    rest = sum(m * d ** (-s) for d, m in sorted(mult.items()) if d != 1)
    return ZetaValue(s, mult.get(1, 0) + rest)


# -- parabolic coset averages -----------------------------------------------------------


def _block_of(blocks: Sequence[int]) -> list[int]:
    return [i for i, b in enumerate(blocks) for _ in range(b)]


def in_block_diagonal(m: Matrix, blocks: Sequence[int]) -> bool:
    owner = _block_of(blocks)
    return all(m[i][j] == 0 for i in range(len(m)) for j in range(len(m)) if owner[i] != owner[j])


def centralizer_elements(t: ClassTable, m: Matrix) -> np.ndarray:
    F, a = t.group.field, np.asarray(m, dtype=np.int64)
    keep = []
    for start in range(0, len(t.codes), CHUNK):
        x = decode(t.group.q, t.group.n, t.codes[start:start + CHUNK])
        mask = np.all(vmatmul(F, x, a) == vmatmul(F, a, x), axis=(1, 2))
        keep.append(x[mask])
    return np.concatenate(keep)


def centralizer_in_levi(t: ClassTable, m: Matrix, blocks: Sequence[int]) -> bool:
    owner = np.asarray(_block_of(blocks))
    off = owner[:, None] != owner[None, :]
    cent = centralizer_elements(t, m)
    return bool(np.all(cent[:, off] == 0))


def unipotent_radical(q: int, blocks: Sequence[int]) -> np.ndarray:
    """All elements of U, the upper unitriangular block radical of the standard parabolic."""
    owner = _block_of(blocks)
    n = len(owner)
    slots = [(i, j) for i in range(n) for j in range(n) if owner[i] < owner[j]]
    count = q ** len(slots)
    out = np.zeros((count, n, n), dtype=np.int64)
    out[:, range(n), range(n)] = 1
    rest = np.arange(count, dtype=np.int64)
    for i, j in slots:
        out[:, i, j] = rest % q
        rest //= q
    return out


@dataclass(frozen=True)
class CosetCheck:
    g: Matrix
    blocks: tuple[int, ...]
    max_residual: float
    averages: tuple[complex, ...]

    def to_json(self) -> dict:
        return {"g": self.g, "blocks": list(self.blocks), "max_residual": self.max_residual}


def coset_class_counts(t: ClassTable, g: Matrix, blocks: Sequence[int]) -> np.ndarray:
    """How many x in gU lie in each class."""
    F = t.group.field
    U = unipotent_radical(t.group.q, blocks)
    gu = vmatmul(F, np.asarray(g, dtype=np.int64), U)
    cls = t.element_class[t.index_of_codes(encode(t.group.q, gu))]
    return np.bincount(cls, minlength=t.num_classes)


def hc_coset_average(table: CharTable, chi_index: int | None, g: Matrix, levi_blocks: Sequence[int]):
    """(1/|U|) sum over x in gU of chi(x); all characters at once when chi_index is None."""
    t = table.class_table
    blocks = tuple(levi_blocks)
    if sum(blocks) != t.group.n or not in_block_diagonal(g, blocks):
        raise GroupError(f"g is not in the standard Levi of shape {blocks}")
    if not centralizer_in_levi(t, g, blocks):
        raise GroupError(f"C_G(g) is not contained in the Levi of shape {blocks}")
    counts = coset_class_counts(t, g, blocks)
    avg = table.values @ counts / counts.sum()
    return avg if chi_index is None else complex(avg[chi_index])


def coset_identity_check(table: CharTable, g: Matrix, levi_blocks: Sequence[int]) -> CosetCheck:
    avg = hc_coset_average(table, None, g, levi_blocks)
    direct = table.values[:, table.class_table.class_of(g)]
    return CosetCheck(g, tuple(levi_blocks), float(np.max(np.abs(avg - direct))), tuple(complex(x) for x in avg))


# -- Steinberg and unipotent degrees ----------------------------------------------------


def p_part(x: int, p: int) -> int:
    out = 1
    while x % p == 0:
        x //= p
        out *= p
    return out


def borel_permutation_character(t: ClassTable) -> np.ndarray:
    """1_B^G on classes: (|G|/|B|) |C_k cap B| / |C_k| with B upper triangular."""
    g = t.group
    n, q = g.n, g.q
    U = unipotent_radical(q, [1] * n)
    diag_codes = np.arange(1, q)
    diags = np.array(np.meshgrid(*[diag_codes] * n, indexing="ij")).reshape(n, -1).T
    counts = np.zeros(t.num_classes, dtype=np.int64)
    B_order = 0
    for d in diags:
        D = np.diag(d)
        if not g.contains(D.tolist()):
            continue
        elems = vmatmul(g.field, D, U)
        cls = t.element_class[t.index_of_codes(encode(q, elems))]
        counts += np.bincount(cls, minlength=t.num_classes)
        B_order += len(elems)
    return (g.order / B_order) * counts / t.sizes


@dataclass(frozen=True)
class SteinbergReport:
    index: int
    degree: int
    checked: tuple[tuple[int, float, int], ...]  # (class, |St(g)|, |C(g)|_p)
    max_residual: float

    @property
    def ok(self) -> bool:
        return self.max_residual < 1e-6

    def to_json(self) -> dict:
        return {
            "character_index": self.index,
            "degree": self.degree,
            "classes": [{"class": c, "abs_value": v, "cent_p_part": pp} for c, v, pp in self.checked],
            "max_residual": self.max_residual,
            "ok": self.ok,
        }


def steinberg_index(table: CharTable) -> int:
    """The degree-q^{n(n-1)/2} constituent of 1_B^G.

    In GL_n(q) there are q - 1 characters of that degree (St times linear
    characters), so degree alone does not pin St down; multiplicity one in
    the Borel permutation character does.
    """
    t, g = table.class_table, table.group
    target = g.q ** (g.n * (g.n - 1) // 2)
    perm = borel_permutation_character(t)
    found = []
    for r, d in enumerate(table.degrees):
        if d != target:
            continue
        mult = float(np.real(np.sum(t.sizes * perm * np.conj(table.values[r]))) / g.order)
        if abs(mult - round(mult)) > 1e-6:
            raise CharacterTableError(f"non-integral multiplicity {mult}")
        if round(mult) >= 1:
            found.append(r)
    if len(found) != 1:
        raise CharacterTableError(f"expected one Steinberg candidate of degree {target}, found {len(found)}")
    return found[0]


def steinberg_check(table: CharTable) -> SteinbergReport:
    t, p = table.class_table, table.group.field.p
    st = steinberg_index(table)
    rows, worst = [], 0.0
    for k in range(t.num_classes):
        if t.rep_order(k) % p == 0:
            continue
        value = abs(complex(table.values[st, k]))
        target = p_part(t.cent_orders[k], p)
        worst = max(worst, abs(value - target))
        rows.append((k, value, target))
    return SteinbergReport(st, table.degrees[st], tuple(rows), worst)


@dataclass(frozen=True)
class DegreeCheck:
    group: str
    expected_degree: int
    present: bool | None  # None when skipped
    skipped_reason: str = ""

    def to_json(self) -> dict:
        return {
            "group": self.group, "expected_degree": self.expected_degree,
            "present": self.present, "skipped": bool(self.skipped_reason), "reason": self.skipped_reason,
        }


def unipotent_degree_check(g: GroupSpec) -> DegreeCheck:
    """Is there a character of degree (q^n - q)/(q - 1)?"""
    if g.kind != "GL" or g.n not in (2, 3):
        raise GroupError("defined for GL_2 and GL_3")
    expected = (g.q ** g.n - g.q) // (g.q - 1)
    try:
        table = character_table_for(g)
    except GuardExceeded as exc:
        return DegreeCheck(str(g), expected, None, str(exc))
    return DegreeCheck(str(g), expected, expected in table.degrees)


# -- bound audit ------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditReport:
    group: str
    blocks: tuple[int, ...]
    alpha: Fraction
    effective_f: float
    argmax: int
    f_bound: Fraction
    rank: int

    @property
    def within_bound(self) -> bool:
        return self.effective_f <= float(self.f_bound)

    def to_json(self) -> dict:
        return {
            "group": self.group, "blocks": list(self.blocks),
            "alpha": {"num": self.alpha.numerator, "den": self.alpha.denominator},
            "effective_f": self.effective_f, "argmax_character": self.argmax,
            "f_bound": float(self.f_bound), "rank": self.rank, "within_bound": self.within_bound,
        }


def main1_bound_audit(table: CharTable, g: Matrix, levi_blocks: Sequence[int]) -> AuditReport:
    """Observed max over nontrivial chi of |chi(g)| / chi(1)^alpha, next to f(r)."""
    t, grp = table.class_table, table.group
    blocks = tuple(levi_blocks)
    if sum(blocks) != grp.n or not in_block_diagonal(g, blocks):
        raise GroupError(f"g is not in the standard Levi of shape {blocks}")
    levi_order = math.prod(gl_order(b, grp.q) for b in blocks)
    if grp.kind == "SL":
        levi_order //= grp.q - 1
    cent = centralizer_elements(t, g)
    owner = np.asarray(_block_of(blocks))
    if len(cent) != levi_order or np.any(cent[:, owner[:, None] != owner[None, :]] != 0):
        raise GroupError(f"C_G(g) is not the Levi of shape {blocks}")
    shape = LeviShape.of(GroupFamily(Family.GL, grp.n), blocks)
    alpha = alpha_classical(shape).value if len(blocks) > 1 else Fraction(1)
    k = t.class_of(g)
    best, arg = 0.0, 0
    for r in range(1, len(table)):
        ratio = abs(complex(table.values[r, k])) / table.degrees[r] ** float(alpha)
        if ratio > best:
            best, arg = ratio, r
    r = grp.n - 1
    return AuditReport(str(grp), blocks, alpha, best, arg, f_bound(r, grp.q).general, r)
