"""Small finite fields F_q with table arithmetic, plus linear algebra over them.

An element of F_{p^k} is stored as an integer code c = sum a_i p^i standing
for the polynomial sum a_i x^i modulo the field's modulus.  For k = 1 the code
is just the residue.  The constant polynomials are the codes 0..p-1, so F_p
sits inside every F_{p^k} with the same codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

import numpy as np

MAX_Q = 32
MAX_P = 31


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


# -- polynomials over F_p as coefficient tuples, lowest degree first ----------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod_p(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _is_irreducible_p(m: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _polymod_p(list(m), list(low) + [1], p):
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree k, comparing (c_{k-1}, ..., c_0) lexicographically."""
    for high_first in product(range(p), repeat=k):
        m = tuple(reversed(high_first)) + (1,)
        if k == 1 or _is_irreducible_p(m, p):
            return m
    raise FieldError(f"no irreducible of degree {k} over F_{p}")  # unreachable


@dataclass(frozen=True, eq=False)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)  # inv[0] is a placeholder 0

    @property
    def q(self) -> int:
        return self.p ** self.k

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __str__(self) -> str:
        return f"F_{self.q}"

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = int(self.inv[a]), -e
        out = 1
        for _ in range(e):
            out = int(self.mul[out, a])
        return out

    def order(self, a: int) -> int:
        if a == 0:
            raise FieldError("0 has no multiplicative order")
        x, k = a, 1
        while x != 1:
            x, k = int(self.mul[x, a]), k + 1
        return k

    def elements_of_order(self, d: int) -> list[int]:
        return [a for a in range(1, self.q) if self.order(a) == d]

    def primitive_element(self) -> int:
        return self.elements_of_order(self.q - 1)[0]

    def modulus_str(self) -> str:
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i > 0 else (f"{c}" if i == 0 else f"{c}{mono}"))
        return "+".join(terms)

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "q": self.q, "modulus": list(self.modulus)}


def _digits(c: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(c % p)
        c //= p
    return out


def _undigits(d: list[int], p: int) -> int:
    return sum(x * p ** i for i, x in enumerate(d))


@lru_cache(maxsize=None)
def build_field(p: int, k: int = 1) -> FieldSpec:
    if not is_prime(p) or p > MAX_P:
        raise FieldError(f"p={p} must be a prime <= {MAX_P}")
    if k < 1 or p ** k > MAX_Q:
        raise FieldError(f"q={p}^{k} exceeds the field guard {MAX_Q}")
    q = p ** k
    modulus = least_irreducible(p, k)
    digits = [_digits(c, p, k) for c in range(q)]
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = _undigits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
            prod = [0] * (2 * k)
            for i, x in enumerate(digits[a]):
                for j, y in enumerate(digits[b]):
                    prod[i + j] += x * y
            r = _polymod_p(prod, list(modulus), p) if k > 1 else [prod[0] % p]
            mul[a, b] = _undigits(r + [0] * (k - len(r)), p)
    neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
    for arr in (add, mul, neg, inv):
        arr.setflags(write=False)
    return FieldSpec(p, k, modulus, add, mul, neg, inv)


def field_of_order(q: int) -> FieldSpec:
    for p in range(2, MAX_P + 1):
        if is_prime(p):
            k, x = 0, q
            while x % p == 0:
                x //= p
                k += 1
            if k and x == 1:
                return build_field(p, k)
    raise FieldError(f"{q} is not a prime power <= {MAX_Q}")


# -- matrices over F_q (lists of lists of codes) ------------------------------------


Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(F: FieldSpec, a: Matrix, b: Matrix) -> Matrix:
    n, m = len(a), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = 0
            for t in range(len(b)):
                acc = int(F.add[acc, F.mul[a[i][t], b[t][j]]])
            out[i][j] = acc
    return out


def mat_sub_scalar(F: FieldSpec, a: Matrix, lam: int) -> Matrix:
    return [[F.sub(a[i][j], lam) if i == j else a[i][j] for j in range(len(a))] for i in range(len(a))]


def _echelon(F: FieldSpec, a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in a]
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        s = int(F.inv[rows[r][c]])
        rows[r] = [int(F.mul[s, x]) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(x, int(F.mul[f, y])) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(F: FieldSpec, a: Matrix) -> int:
    return len(_echelon(F, a)[1]) if a else 0


def det(F: FieldSpec, a: Matrix) -> int:
    rows = [list(r) for r in a]
    n, out = len(rows), 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            out = int(F.neg[out])
        out = int(F.mul[out, rows[c][c]])
        s = int(F.inv[rows[c][c]])
        for i in range(c + 1, n):
            if rows[i][c]:
                f = int(F.mul[rows[i][c], s])
                rows[i] = [F.sub(x, int(F.mul[f, y])) for x, y in zip(rows[i], rows[c])]
    return out


def inverse(F: FieldSpec, a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(a[i]) + identity(n)[i] for i in range(n)]
    red, pivots = _echelon(F, aug)
    if pivots[:n] != list(range(n)):
        raise FieldError("matrix is singular")
    return [row[n:] for row in red[:n]]


def nullspace(F: FieldSpec, a: Matrix, ncols: int) -> list[list[int]]:
    """Basis of {x : a x = 0}."""
    if not a:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    red, pivots = _echelon(F, a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for r, pc in enumerate(pivots):
            v[pc] = int(F.neg[red[r][fcol]])
        basis.append(v)
    return basis


def charpoly(F: FieldSpec, a: Matrix) -> list[int]:
    """det(xI - a), lowest degree first, from sums of principal minors."""
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for k in range(1, n + 1):
        total = 0
        for idx in combinations(range(n), k):
            minor = [[a[i][j] for j in idx] for i in idx]
            total = int(F.add[total, det(F, minor)])
        coeffs[n - k] = total if k % 2 == 0 else int(F.neg[total])
    return coeffs


# -- polynomials over F_q ---------------------------------------------------------------


def poly_divmod(F: FieldSpec, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise FieldError("division by zero polynomial")
    quot = [0] * max(len(a) - len(b) + 1, 1)
    inv_lead = int(F.inv[b[-1]])
    while len(a) >= len(b):
        c = int(F.mul[a[-1], inv_lead])
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], int(F.mul[c, bi]))
        _trim(a)
    return _trim(quot), a


def poly_eval_matrix(F: FieldSpec, f: list[int], a: Matrix) -> Matrix:
    """f(a) by Horner's rule."""
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for c in reversed(f):
        out = mat_mul(F, out, a)
        for i in range(n):
            out[i][i] = int(F.add[out[i][i], c])
    return out


def _monic_polys(F: FieldSpec, d: int):
    for low in product(range(F.q), repeat=d):
        yield list(low) + [1]


def factor_poly(F: FieldSpec, f: list[int]) -> list[tuple[tuple[int, ...], int]]:
    """Irreducible factorisation of a monic polynomial by trial division.

    Degrees are at most 4 here, so trying monic divisors in increasing degree
    is cheap; the first divisor found at each degree is irreducible.
    Returns ((coeffs, low first), multiplicity) pairs.
    """
    f = _trim(list(f))
    out: list[tuple[tuple[int, ...], int]] = []
    d = 1
    while len(f) - 1 >= 2 * d:
        for g in _monic_polys(F, d):
            e = 0
            while True:
                quot, rem = poly_divmod(F, f, g)
                if rem:
                    break
                f, e = quot, e + 1
            if e:
                out.append((tuple(g), e))
        d += 1
    if len(f) > 1:
        # nothing of degree <= deg/2 divides what is left
        out.append((tuple(f), 1))
    return sorted(out, key=lambda t: (len(t[0]), t[0][::-1]))
