"""Exact random walks driven by a conjugacy class.

P^t is a class function.  We keep the integer counts

    N_t(k) = #{(c_1, ..., c_t) in C^t : c_1 ... c_t = z_k},

so P^t(z_k) = N_t(k) / |C|^t exactly, and one step is
N_{t+1}(k) = sum_j N_t(j) a_{j c k}.  Thresholds against 1/e are decided by
bracketing e between two rationals, so no float ever decides a first passage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .alphabeta import supp_constants
from .classgeom import Family, GroupFamily, LeviShape, coxeter_number, dim_group
from .ffgroup import ClassTable, GroupError, StructureConstants


class WalkError(ValueError):
    pass


# -- exact comparison with 1/e ------------------------------------------------------------


def e_bracket(terms: int) -> tuple[Fraction, Fraction]:
    """lo < e < hi from the series; the tail after 1/K! is below 2/(K+1)!."""
    lo = sum(Fraction(1, math.factorial(k)) for k in range(terms + 1))
    return lo, lo + Fraction(2, math.factorial(terms + 1))


def less_than_inv_e(x: Fraction) -> bool:
    """Decide x < 1/e exactly (x is rational, 1/e is not, so this terminates)."""
    terms = 10
    while True:
        lo, hi = e_bracket(terms)
        if x * hi < 1:
            return True
        if x * lo >= 1:
            return False
        terms *= 2


def less_than(x: Fraction, eps: Fraction | None) -> bool:
    return less_than_inv_e(x) if eps is None else x < eps


# -- states -----------------------------------------------------------------------------


@dataclass(frozen=True)
class WalkState:
    counts: tuple[int, ...]  # N_t per class
    t: int
    class_size: int  # |C|

    @property
    def denominator(self) -> int:
        return self.class_size ** self.t

    @property
    def probs(self) -> tuple[Fraction, ...]:
        """Probability of each single element of class k (not of the whole class)."""
        d = self.denominator
        return tuple(Fraction(c, d) for c in self.counts)

    def support(self) -> frozenset[int]:
        return frozenset(k for k, c in enumerate(self.counts) if c)


def initial_state(t: ClassTable, c: int) -> WalkState:
    counts = [0] * t.num_classes
    counts[t.identity_class] = 1
    return WalkState(tuple(counts), 0, int(t.sizes[c]))


def step(state: WalkState, c: int, sc: StructureConstants) -> WalkState:
    a = sc.counts[:, c, :]
    new = [0] * a.shape[1]
    for j, nj in enumerate(state.counts):
        if nj:
            row = a[j]
            for k in np.nonzero(row)[0]:
                new[k] += nj * int(row[k])
    return WalkState(tuple(new), state.t + 1, state.class_size)


@dataclass(frozen=True)
class Norms:
    l1: Fraction
    linf: Fraction

    def to_json(self) -> dict:
        return {"l1": float(self.l1), "linf": float(self.linf)}


def norms(state: WalkState, t: ClassTable) -> Norms:
    """||P^t - U||_1 and ||P^t - U||_inf = |G| max |P^t - U|, exactly."""
    G, D = t.group.order, state.denominator
    # |N/D - 1/G| = |N G - D| / (D G)
    diffs = [abs(n * G - D) for n in state.counts]
    l1 = Fraction(sum(int(s) * d for s, d in zip(t.sizes, diffs)), D * G)
    linf = Fraction(max(diffs), D)
    return Norms(l1, linf)


def support_size(state: WalkState, t: ClassTable) -> int:
    return int(sum(int(t.sizes[k]) for k in state.support()))


# -- mixing and covering ----------------------------------------------------------------


def _support_orbit(t: ClassTable, c: int, sc: StructureConstants) -> list[frozenset[int]]:
    """Supports of C^0, C^1, ... until one repeats (the sequence is then periodic)."""
    a = sc.counts[:, c, :] > 0
    seen, seq = set(), []
    cur = frozenset([t.identity_class])
    while cur not in seen:
        seen.add(cur)
        seq.append(cur)
        nxt = np.zeros(t.num_classes, dtype=bool)
        for j in cur:
            nxt |= a[j]
        cur = frozenset(int(k) for k in np.nonzero(nxt)[0])
    return seq


def covering_number(t: ClassTable, c: int, sc: StructureConstants) -> int:
    """Least t with C^t = G."""
    if c == t.identity_class or int(t.sizes[c]) == 1:
        raise WalkError("a central class does not generate")
    seq = _support_orbit(t, c, sc)
    everything = frozenset(range(t.num_classes))
    for i, s in enumerate(seq):
        if s == everything:
            return i
    if frozenset().union(*seq) != everything:
        raise WalkError("class does not generate the group")
    raise WalkError("C^t never equals G (the walk is periodic)")


@dataclass
class MixingReport:
    group: str
    class_index: int
    class_size: int
    T_l1: int
    T_linf: int
    cover: int
    lower_bound: float  # (log|G| + log(1 - 1/e)) / log|C|
    cover_lower_bound: float  # log|G| / log|C|
    deficit_t: int  # largest t with |C^t| < |G|(1 - 1/e), 0 if none
    levi_bound: int | None = None
    levi_bound_note: str = ""
    trajectory: list[dict] = field(default_factory=list)

    @property
    def lower_bound_ok(self) -> bool:
        return self.lower_bound <= self.T_l1

    @property
    def deficit_ok(self) -> bool:
        return self.T_l1 >= self.deficit_t + 1

    def to_json(self) -> dict:
        return {
            "group": self.group, "class": self.class_index, "class_size": self.class_size,
            "T_l1": self.T_l1, "T_linf": self.T_linf, "cover": self.cover,
            "lower_bound": self.lower_bound, "cover_lower_bound": self.cover_lower_bound,
            "deficit_t": self.deficit_t, "lower_bound_ok": self.lower_bound_ok, "deficit_ok": self.deficit_ok,
            "levi_bound": self.levi_bound, "levi_bound_note": self.levi_bound_note,
            "trajectory": self.trajectory,
        }


def mixing_time(
    t: ClassTable,
    c: int,
    sc: StructureConstants,
    eps_linf: Fraction | None = None,
    tmax: int = 64,
    ambient: tuple[GroupFamily, LeviShape] | None = None,
) -> MixingReport:
    """First passages below 1/e in l1 (and below eps_linf, default 1/e, in l_inf)."""
    cover = covering_number(t, c, sc)  # also rejects non-generating and periodic classes
    G, size = t.group.order, int(t.sizes[c])
    state = initial_state(t, c)
    T_l1 = T_linf = None
    deficit = 0
    trajectory = []
    while T_l1 is None or T_linf is None:
        if state.t > tmax:
            raise WalkError(f"no mixing within tmax={tmax}")
        nm = norms(state, t)
        supp_size = support_size(state, t)
        trajectory.append({"t": state.t, **nm.to_json(), "support": supp_size})
        if state.t >= 1 and _below_fraction_of_G(supp_size, G):
            deficit = state.t
        if T_l1 is None and less_than_inv_e(nm.l1):
            T_l1 = state.t
        if T_linf is None and less_than(nm.linf, eps_linf):
            T_linf = state.t
        state = step(state, c, sc)
    report = MixingReport(
        group=str(t.group), class_index=c, class_size=size, T_l1=T_l1, T_linf=T_linf, cover=cover,
        lower_bound=lower_bound_time(G, size),
        cover_lower_bound=math.log(G) / math.log(size),
        deficit_t=deficit, trajectory=trajectory,
    )
    if ambient is not None:
        family, shape = ambient
        report.levi_bound = levi_mixing_bound(family, shape)
        report.levi_bound_note = "holds for large q; observational at this q"
    return report


def _below_fraction_of_G(s: int, G: int) -> bool:
    """s < G (1 - 1/e), i.e. 1 - s/G > 1/e, decided exactly."""
    return not less_than_inv_e(Fraction(G - s, G))


def class_from_rep(t: ClassTable, rep) -> int:
    try:
        return t.class_of(rep)
    except GroupError as exc:
        raise WalkError(str(exc)) from exc


# -- Frobenius formula oracle -----------------------------------------------------------


def frobenius_distribution(table, c: int, steps: int) -> np.ndarray:
    """P^t(z_k) = (1/|G|) sum_chi chi(y)^t conj(chi(z_k)) / chi(1)^(t-1)."""
    G = table.group.order
    vals = table.values
    deg = np.asarray(table.degrees, dtype=float)
    coeff = vals[:, c] ** steps / deg ** (steps - 1)
    return np.real(coeff @ vals.conj()) / G


# -- bound formulas ---------------------------------------------------------------------


def _simple(f: GroupFamily) -> GroupFamily:
    return GroupFamily(Family.SL, f.rank_param) if f.type is Family.GL else f


def _levi_dim_in_simple(shape: LeviShape) -> int:
    if shape.family.type is Family.GL:
        return LeviShape(GroupFamily(Family.SL, shape.family.rank_param), shape.gl_factors, 0).dim()
    return shape.dim()


def _dim_ratio(shape: LeviShape) -> Fraction:
    d = dim_group(_simple(shape.family))
    dl = _levi_dim_in_simple(shape)
    if dl >= d:
        raise WalkError("the Levi subgroup must be proper")
    return Fraction(d, d - dl)


def levi_covering_threshold(family: GroupFamily, shape: LeviShape) -> Fraction:
    h = coxeter_number(family)
    return (4 + Fraction(4, h)) * _dim_ratio(shape)


def levi_mixing_bound(family: GroupFamily, shape: LeviShape) -> int:
    h = coxeter_number(family)
    return math.ceil((2 + Fraction(2, h)) * _dim_ratio(shape))


def support_mixing_bound(family: GroupFamily, supp_y: int) -> int:
    if supp_y < 1:
        raise WalkError("supp(y) must be positive")
    simple = _simple(family)
    h = coxeter_number(simple)
    _, rp = supp_constants(simple)
    return math.ceil((2 + Fraction(2, h)) * rp / supp_y)


@dataclass(frozen=True)
class Bound:
    name: str
    kind: str  # "mixing", "covering", "diameter", "lower"
    value: Fraction | int | float
    proviso: str

    def to_json(self) -> dict:
        v = self.value
        if isinstance(v, Fraction):
            v = {"num": v.numerator, "den": v.denominator}
        return {"name": self.name, "kind": self.kind, "value": v, "proviso": self.proviso}


def bound_catalog(
    ambient: GroupFamily, shape: LeviShape | None, supp_y: int | None = None,
    n: int | None = None, q: int | None = None,
) -> list[Bound]:
    simple = _simple(ambient)
    r = simple.rank
    h = coxeter_number(simple)
    large_q = "large q" + ("" if q is None else f" (q={q} not certified)")
    out: list[Bound] = []
    if shape is not None:
        out.append(Bound("Levi covering threshold", "covering", levi_covering_threshold(ambient, shape),
                         f"C^t = G for t above this, {large_q}"))
        out.append(Bound("Levi mixing", "mixing", levi_mixing_bound(ambient, shape), large_q))
    out.append(Bound("nice-element diameter", "diameter", 2 * r + 4, f"nice y, {large_q}"))
    out.append(Bound("nice-element mixing", "mixing", r + 2, f"nice y, {large_q}"))
    if simple.type is Family.SL:
        nn = n or simple.natural_dim
        out.append(Bound("non-central covering threshold", "covering", 4 * nn + 4, f"any non-central x, {large_q}"))
        out.append(Bound("non-central mixing", "mixing", 2 * nn + 3, f"any non-central x, {large_q}"))
        out.append(Bound("unipotent covering threshold", "covering", 2 * nn, f"unipotent u, {large_q}"))
        out.append(Bound("unipotent mixing", "mixing", nn, f"unipotent u, {large_q}"))
    if supp_y is not None:
        out.append(Bound("support mixing", "mixing", support_mixing_bound(ambient, supp_y),
                         f"semisimple part centralizer a split Levi, {large_q}"))
        _, rp = supp_constants(simple)
        out.append(Bound("support lower order", "lower", rp / (2 * supp_y), "up to factors o(1) in log|G|"))
    out.append(Bound("coxeter number", "constant", h, ""))
    return out


def lower_bound_time(order: int, class_size: int) -> float:
    return (math.log(order) + math.log(1 - math.exp(-1))) / math.log(class_size)


def walk_distribution(t: ClassTable, c: int, sc: StructureConstants, steps: int) -> WalkState:
    state = initial_state(t, c)
    for _ in range(steps):
        state = step(state, c, sc)
    return state


def class_function_floats(state: WalkState) -> np.ndarray:
    D = state.denominator
    return np.array([float(Fraction(n, D)) for n in state.counts])


def norms_sequence(t: ClassTable, c: int, sc: StructureConstants, tmax: int) -> list[Norms]:
    state, out = initial_state(t, c), []
    for _ in range(tmax + 1):
        out.append(norms(state, t))
        state = step(state, c, sc)
    return out


def split_regular_rep(q: int) -> list[list[int]]:
    """diag(a, a^-1) in SL_2(q) with a the least code whose square is not 1."""
    from .fields import field_of_order

    F = field_of_order(q)
    for a in range(2, q):
        if F.mul[a, a] != 1:
            return [[a, 0], [0, int(F.inv[a])]]
    raise WalkError(f"no split regular semisimple element in SL_2({q})")
