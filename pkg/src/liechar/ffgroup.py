"""GL_n(q) and SL_n(q) for n <= 4, q <= 32: elements, classes, structure constants.

Matrices are arrays of field codes (see :mod:`liechar.fields`).  An element is
also identified by its integer code: the row-major entries read as a base-q
number with the first entry most significant.  "Least" always refers to this
order, which is lexicographic order on the row-major entry list.

Conjugacy classes are the orbits of the conjugation action of a generating
set (elementary transvections x_ij(b), b running over an F_p-basis of F_q,
plus diag(w,1,..,1) for GL with w primitive), found as connected components
of the resulting graph on G.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .fields import (
    FieldSpec, Matrix, charpoly, det, factor_poly, field_of_order, identity, inverse,
    mat_mul, nullspace, poly_eval_matrix, rank,
)

ORDER_GUARD = 30_000_000
ELEMENT_GUARD = 2_000_000
CODE_SPACE_GUARD = 1 << 25
STRUCTURE_GUARD = 20_000_000  # |G| * number of classes
COMMUTANT_GUARD = 2_000_000
CHUNK = 1 << 18


class GroupError(ValueError):
    pass


class GuardExceeded(GroupError):
    pass


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("LIECHAR_THREADS", "1")))
    except ValueError:
        return 1


# -- vectorised matrix arithmetic ---------------------------------------------------


def vmatmul(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched product over F; shapes broadcast like ``a @ b``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if F.k == 1:
        return (a @ b) % F.p
    n = a.shape[-1]
    out = None
    for t in range(n):
        term = F.mul[a[..., :, t, None], b[..., None, t, :]]
        out = term if out is None else F.add[out, term]
    return out


def vdet(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    """Batched determinant by the Leibniz expansion (n <= 4, so at most 24 terms)."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[-1]
    total = np.zeros(a.shape[:-2], dtype=np.int64)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = a[..., 0, perm[0]]
        for i in range(1, n):
            term = (term * a[..., i, perm[i]]) % F.p if F.k == 1 else F.mul[term, a[..., i, perm[i]]]
        if F.k == 1:
            total = (total + (-term if inversions % 2 else term)) % F.p
        else:
            total = F.add[total, F.neg[term] if inversions % 2 else term]
    return total


def encode(q: int, mats: np.ndarray) -> np.ndarray:
    n = mats.shape[-1]
    weights = q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    return mats.reshape(*mats.shape[:-2], n * n).astype(np.int64) @ weights


def decode(q: int, n: int, codes: np.ndarray) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty(codes.shape + (n * n,), dtype=np.int64)
    rest = codes.copy()
    for pos in range(n * n - 1, -1, -1):
        out[..., pos] = rest % q
        rest //= q
    return out.reshape(codes.shape + (n, n))


def parse_matrix(text: str) -> Matrix:
    """"2,0;0,3" -> [[2,0],[0,3]]."""
    rows = [r for r in text.replace(" ", "").split(";") if r]
    mat = [[int(x) for x in r.split(",")] for r in rows]
    if not mat or any(len(r) != len(mat) for r in mat):
        raise GroupError(f"not a square matrix: {text!r}")
    return mat


def format_matrix(m: Matrix) -> str:
    return ";".join(",".join(str(x) for x in row) for row in m)


# -- groups --------------------------------------------------------------------------


def gl_order(n: int, q: int) -> int:
    return math.prod(q ** n - q ** i for i in range(n))


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    n: int
    field: FieldSpec

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        if kind not in ("GL", "SL"):
            raise GroupError(f"kind must be GL or SL, got {self.kind!r}")
        if not 2 <= self.n <= 4:
            raise GroupError(f"n={self.n} outside 2..4")
        if self.order > ORDER_GUARD:
            raise GuardExceeded(f"|{self}| = {self.order} exceeds {ORDER_GUARD}")

    @classmethod
    def of(cls, kind: str, n: int, q: int) -> GroupSpec:
        return cls(kind, n, field_of_order(q))

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def order(self) -> int:
        o = gl_order(self.n, self.q)
        return o if self.kind == "GL" else o // (self.q - 1)

    def contains(self, m: Matrix) -> bool:
        d = det(self.field, m)
        return d == 1 if self.kind == "SL" else d != 0

    def __str__(self) -> str:
        return f"{self.kind}_{self.n}({self.q})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "q": self.q, "order": self.order}


def generators(g: GroupSpec) -> list[Matrix]:
    F, n = g.field, g.n
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for e in range(F.k):
                x = identity(n)
                x[i][j] = F.p ** e
                gens.append(x)
    if g.kind == "GL" and F.q > 2:
        d = identity(n)
        d[0][0] = F.primitive_element()
        gens.append(d)
    return gens


def enumerate_elements(g: GroupSpec) -> np.ndarray:
    """Sorted codes of all elements, by filtering the code space on det."""
    if g.order > ELEMENT_GUARD:
        raise GuardExceeded(f"|{g}| = {g.order} exceeds the enumeration guard {ELEMENT_GUARD}")
    space = g.q ** (g.n * g.n)
    if space > CODE_SPACE_GUARD:
        raise GuardExceeded(f"code space {space} for {g} exceeds {CODE_SPACE_GUARD}")
    kept = []
    for start in range(0, space, CHUNK):
        codes = np.arange(start, min(start + CHUNK, space), dtype=np.int64)
        d = vdet(g.field, decode(g.q, g.n, codes))
        kept.append(codes[d == 1] if g.kind == "SL" else codes[d != 0])
    out = np.concatenate(kept)
    if len(out) != g.order:
        raise GroupError(f"enumerated {len(out)} elements of {g}, expected {g.order}")
    return out


# -- class tables --------------------------------------------------------------------


def _invariant(F: FieldSpec, m: Matrix) -> tuple:
    """(char poly, per irreducible factor f of multiplicity e: ranks of f(m)^j, j <= e)."""
    cp = charpoly(F, m)
    profile = []
    for f, e in factor_poly(F, cp):
        fm = poly_eval_matrix(F, list(f), m)
        power, ranks = identity(len(m)), []
        for _ in range(e):
            power = mat_mul(F, power, fm)
            ranks.append(rank(F, power))
        profile.append((f, tuple(ranks)))
    return tuple(cp), tuple(profile)


@dataclass(eq=False)
class ClassTable:
    group: GroupSpec
    codes: np.ndarray = field(repr=False)  # sorted element codes
    element_class: np.ndarray = field(repr=False)  # class index of codes[i]
    rep_codes: np.ndarray
    sizes: np.ndarray

    @property
    def num_classes(self) -> int:
        return len(self.sizes)

    @cached_property
    def reps(self) -> list[Matrix]:
        return [m.tolist() for m in decode(self.group.q, self.group.n, self.rep_codes)]

    @cached_property
    def cent_orders(self) -> list[int]:
        return [self.group.order // int(s) for s in self.sizes]

    @cached_property
    def mats(self) -> np.ndarray:
        return decode(self.group.q, self.group.n, self.codes)

    def index_of_codes(self, codes: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.codes, codes)
        idx = np.minimum(idx, len(self.codes) - 1)
        if not np.array_equal(self.codes[idx], codes):
            raise GroupError("matrix is not an element of the group")
        return idx

    def class_of(self, m: Matrix) -> int:
        code = encode(self.group.q, np.asarray([m]))
        return int(self.element_class[self.index_of_codes(code)[0]])

    @cached_property
    def inverse_map(self) -> list[int]:
        return [self.class_of(inverse(self.group.field, r)) for r in self.reps]

    @cached_property
    def invariants(self) -> list[tuple]:
        return [_invariant(self.group.field, r) for r in self.reps]

    @cached_property
    def class_of_invariant(self) -> dict[tuple, list[int]]:
        """Canonical invariant -> classes carrying it (several only for split SL classes)."""
        out: dict[tuple, list[int]] = {}
        for i, inv in enumerate(self.invariants):
            out.setdefault(inv, []).append(i)
        return out

    def split_classes(self) -> list[list[int]]:
        return [v for v in self.class_of_invariant.values() if len(v) > 1]

    @cached_property
    def identity_class(self) -> int:
        return self.class_of(identity(self.group.n))

    def supp_of_rep(self, i: int) -> int:
        return supp(self.reps[i], self.group.field)

    def rep_order(self, i: int) -> int:
        F, r = self.group.field, self.reps[i]
        x, k = r, 1
        one = identity(self.group.n)
        while x != one:
            x, k = mat_mul(F, x, r), k + 1
        return k

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "classes": [
                {
                    "index": i,
                    "rep": [x for row in self.reps[i] for x in row],
                    "size": int(self.sizes[i]),
                    "centralizer_order": self.cent_orders[i],
                    "supp": self.supp_of_rep(i),
                }
                for i in range(self.num_classes)
            ],
        }


def _conjugation_edges(g: GroupSpec, codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    F = g.field
    src, dst = [], []
    for h in generators(g):
        h_arr = np.asarray(h, dtype=np.int64)
        hinv = np.asarray(inverse(F, h), dtype=np.int64)
        for start in range(0, len(codes), CHUNK):
            chunk = codes[start:start + CHUNK]
            conj = vmatmul(F, vmatmul(F, h_arr, decode(g.q, g.n, chunk)), hinv)
            idx = np.searchsorted(codes, encode(g.q, conj))
            src.append(np.arange(start, start + len(chunk)))
            dst.append(idx)
    return np.concatenate(src), np.concatenate(dst)


_TABLE_CACHE: dict[tuple, ClassTable] = {}


def build_class_table(g: GroupSpec) -> ClassTable:
    key = (g.kind, g.n, g.q)
    if key in _TABLE_CACHE:
        return _TABLE_CACHE[key]
    codes = enumerate_elements(g)
    src, dst = _conjugation_edges(g, codes)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(len(codes), len(codes)))
    ncomp, labels = connected_components(graph, directed=True, connection="weak")
    sizes = np.bincount(labels, minlength=ncomp)
    first = np.full(ncomp, len(codes), dtype=np.int64)
    np.minimum.at(first, labels, np.arange(len(codes)))  # codes are sorted, so the first index is the least
    order = sorted(range(ncomp), key=lambda c: (int(sizes[c]), int(codes[first[c]])))
    relabel = np.empty(ncomp, dtype=np.int64)
    relabel[order] = np.arange(ncomp)
    table = ClassTable(
        group=g,
        codes=codes,
        element_class=relabel[labels],
        rep_codes=codes[first[order]],
        sizes=sizes[order].astype(np.int64),
    )
    if int(table.sizes.sum()) != g.order:
        raise GroupError("class equation fails")
    _TABLE_CACHE[key] = table
    return table


def centralizer_order(t: ClassTable, m: Matrix) -> int:
    """Direct count of elements commuting with m."""
    F, a = t.group.field, np.asarray(m, dtype=np.int64)
    total = 0
    for start in range(0, len(t.codes), CHUNK):
        x = decode(t.group.q, t.group.n, t.codes[start:start + CHUNK])
        total += int(np.all(vmatmul(F, x, a) == vmatmul(F, a, x), axis=(1, 2)).sum())
    return total


# -- structure constants ---------------------------------------------------------------


@dataclass(eq=False)
class StructureConstants:
    """counts[i, j, k] = #{(x, y) in C_i x C_j : xy = z_k} for z_k the rep of class k."""

    table: ClassTable
    counts: np.ndarray = field(repr=False)

    def __call__(self, i: int, j: int) -> dict[int, int]:
        row = self.counts[i, j]
        return {int(k): int(row[k]) for k in np.nonzero(row)[0]}

    def mass_conserved(self) -> bool:
        sizes = self.table.sizes
        lhs = self.counts @ sizes
        return bool(np.array_equal(lhs, np.outer(sizes, sizes)))


def structure_constants(t: ClassTable) -> StructureConstants:
    """All N_{ijk}.

    With w = x^{-1}: x in C_i iff w lies in the inverse class of C_i, and
    x^{-1} z_k = w z_k.  So for each k a single pass over w in G suffices.
    """
    g, F = t.group, t.group.field
    c = t.num_classes
    if g.order * c > STRUCTURE_GUARD:
        raise GuardExceeded(f"{g}: |G| * classes = {g.order * c} exceeds {STRUCTURE_GUARD}")
    inv_map = np.asarray(t.inverse_map, dtype=np.int64)
    x_class = inv_map[t.element_class]
    mats = t.mats

    def column(k: int) -> np.ndarray:
        z = np.asarray(t.reps[k], dtype=np.int64)
        prod_class = t.element_class[t.index_of_codes(encode(g.q, vmatmul(F, mats, z)))]
        return np.bincount(x_class * c + prod_class, minlength=c * c).reshape(c, c)

    counts = np.zeros((c, c, c), dtype=np.int64)
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        for k, col in enumerate(pool.map(column, range(c))):
            counts[:, :, k] = col
    return StructureConstants(t, counts)


# -- support, witnesses ----------------------------------------------------------------


def eigenspace_dims(m: Matrix, F: FieldSpec) -> list[tuple[tuple[int, ...], int, int]]:
    """(irreducible factor f, degree d, dim of each eigenspace for a root of f) per factor."""
    n = len(m)
    out = []
    for f, _ in factor_poly(F, charpoly(F, m)):
        d = len(f) - 1
        kernel = n - rank(F, poly_eval_matrix(F, list(f), m))
        # over the closure ker f(m) splits into d Galois-conjugate eigenspaces of equal dimension
        out.append((f, d, kernel // d))
    return out


def supp(m: Matrix, F: FieldSpec) -> int:
    """n minus the largest eigenspace dimension over the algebraic closure."""
    if det(F, m) == 0:
        raise GroupError("supp needs an invertible matrix")
    return len(m) - max(dim for _, _, dim in eigenspace_dims(m, F))


def commutant_basis(F: FieldSpec, s: Matrix) -> list[Matrix]:
    """Basis of {X : Xs = sX} over F."""
    n = len(s)
    eqs = []
    for i in range(n):
        for j in range(n):
            # (Xs - sX)_{ij} = sum_t X_{it} s_{tj} - s_{it} X_{tj}
            row = [0] * (n * n)
            for t in range(n):
                row[i * n + t] = int(F.add[row[i * n + t], s[t][j]])
                row[t * n + j] = F.sub(row[t * n + j], s[i][t])
            eqs.append(row)
    return [[v[i * n:(i + 1) * n] for i in range(n)] for v in nullspace(F, eqs, n * n)]


def centralizer_order_gl(F: FieldSpec, s: Matrix) -> int:
    """|C_{GL_n(q)}(s)|: count invertible elements of the commutant algebra."""
    basis = np.asarray(commutant_basis(F, s), dtype=np.int64)
    dim, n = len(basis), len(s)
    total = F.q ** dim
    if total > COMMUTANT_GUARD:
        raise GuardExceeded(f"commutant has q^{dim} = {total} elements, guard {COMMUTANT_GUARD}")
    count = 0
    for start in range(0, total, CHUNK):
        coeffs = _digits_matrix(F.q, dim, np.arange(start, min(start + CHUNK, total)))
        acc = np.zeros((coeffs.shape[0], n, n), dtype=np.int64)
        for b in range(dim):
            acc = F.add[acc, F.mul[coeffs[:, b, None, None], basis[b][None]]]
        count += int((vdet(F, acc) != 0).sum())
    return count


def _digits_matrix(q: int, width: int, codes: np.ndarray) -> np.ndarray:
    out = np.empty((len(codes), width), dtype=np.int64)
    rest = codes.copy()
    for b in range(width):
        out[:, b] = rest % q
        rest //= q
    return out


@dataclass(frozen=True)
class LeviWitness:
    sizes: tuple[int, ...]
    q: int
    zeta: int
    N: int
    matrix: Matrix

    @property
    def expected_centralizer(self) -> int:
        return math.prod(gl_order(k, self.q) for k in self.sizes)

    def to_json(self) -> dict:
        return {
            "sizes": list(self.sizes), "q": self.q, "zeta": self.zeta, "N": self.N,
            "matrix": self.matrix, "expected_centralizer_order": self.expected_centralizer,
        }


def levi_witness_sl(sizes: Sequence[int], q: int) -> LeviWitness:
    """Block-scalar s in SL_n(q) whose GL-centralizer is prod GL_{n_i}(q).

    zeta has order N = n_r * prod_{i<r}(n_i + 1) and zeta_d = zeta^{N/d}.
    Block i < r is the scalar zeta_{P_i} with P_i = (n_1+1)...(n_i+1), block r
    is zeta.  Then det = zeta_{P_{r-1}}^{-1} zeta^{n_r} = 1, because the
    partial products of det(h_i) equal zeta_{P_i}^{-1} by the same induction
    as with inverted scalars.  (With h_i inverted and h_r = zeta, det(s) is
    zeta^{2 n_r}, which is 1 only when N divides 2 n_r.)
    """
    sizes = tuple(int(x) for x in sizes)
    if len(sizes) < 2 or list(sizes) != sorted(sizes) or sizes[-1] < 2 or sizes[0] < 1:
        raise GroupError(f"sizes {sizes} must be ascending, r >= 2, n_r >= 2")
    F = field_of_order(q)
    N = sizes[-1] * math.prod(k + 1 for k in sizes[:-1])
    if (q - 1) % N:
        raise GroupError(f"N = {N} does not divide q - 1 = {q - 1}")
    zeta = F.elements_of_order(N)[0]
    diag, prefix = [], 1
    for k in sizes[:-1]:
        prefix *= k + 1
        diag += [F.pow(zeta, N // prefix)] * k
    diag += [zeta] * sizes[-1]
    n = len(diag)
    s = [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
    if det(F, s) != 1:
        raise GroupError(f"witness for {sizes}, q={q} has det {det(F, s)}")
    return LeviWitness(sizes, q, zeta, N, s)


def witness_cases(max_n: int = 4, max_q: int = 32) -> list[tuple[tuple[int, ...], int]]:
    """All (sizes, q) meeting the divisibility precondition with a commutant inside the guard."""
    from .partitions import enumerate_partitions

    out = []
    for n in range(3, max_n + 1):
        for p in enumerate_partitions(n):
            sizes = tuple(sorted(p.parts))
            if len(sizes) < 2 or sizes[-1] < 2:
                continue
            N = sizes[-1] * math.prod(k + 1 for k in sizes[:-1])
            for q in range(3, max_q + 1):
                try:
                    field_of_order(q)
                except ValueError:
                    continue
                if (q - 1) % N == 0 and q ** sum(k * k for k in sizes) <= COMMUTANT_GUARD:
                    out.append((sizes, q))
    return out


def central_homology(n: int, q: int, mu: int, lam: int, kind: str = "GL") -> Matrix:
    """diag(mu I_{n-1}, lam); for SL also require mu^{n-1} lam = 1."""
    F = field_of_order(q)
    if not (0 < mu < q and 0 < lam < q) or mu == lam:
        raise GroupError("need distinct nonzero mu, lam")
    if kind.upper() == "SL" and F.mul[F.pow(mu, n - 1), lam] != 1:
        raise GroupError(f"mu^{n - 1} * lam != 1 in F_{q}")
    return [[(mu if i < n - 1 else lam) if i == j else 0 for j in range(n)] for i in range(n)]


def homology_params_sl(n: int, q: int) -> list[tuple[int, int]]:
    """All (mu, lam) with mu != lam and mu^{n-1} lam = 1."""
    F = field_of_order(q)
    return [
        (mu, lam) for mu, lam in product(range(1, q), repeat=2)
        if mu != lam and F.mul[F.pow(mu, n - 1), lam] == 1
    ]
