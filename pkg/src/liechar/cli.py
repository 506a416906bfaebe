"""Command-line entry point: ``liechar <subcommand> ...``.

Exit status: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any

from . import __version__
from . import acceptance
from . import alphabeta as ab
from . import exceptdata as ex
from . import ffgroup as ff
from . import spectra as sp
from . import walks as wk
from .classgeom import Family, GroupFamily, LeviShape, dim_group, parse_family

SCHEMA = "liechar/1"


class UsageError(ValueError):
    pass


# -- output ------------------------------------------------------------------------------


def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "item"):  # numpy scalars
        return x.item()
    return x


def _cell(v: Any) -> str:
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        return f"{v['num']}/{v['den']}"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


def emit(command: str, payload: dict, rows: list[dict] | None, fmt: str, out=None) -> None:
    out = out or sys.stdout
    doc = _plain({"schema": SCHEMA, "command": command, **payload})
    if fmt == "json":
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        return
    table = _plain(rows) if rows is not None else [{k: v for k, v in doc.items() if k != "schema"}]
    if fmt == "csv":
        fields: list[str] = []
        for r in table:
            fields += [k for k in r if k not in fields]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in table:
            writer.writerow({k: _cell(r.get(k, "")) for k in fields})
        out.write(buf.getvalue())
        return
    for r in table:
        out.write("  ".join(f"{k}={_cell(v)}" for k, v in r.items()) + "\n")


# -- argument helpers ----------------------------------------------------------------------


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _natural_dim(kind: Family, n: int | None, r: int | None) -> int:
    if n is not None:
        return n
    if r is None:
        raise UsageError("give --n (natural dimension) or --r (rank)")
    return {Family.GL: r + 1, Family.SL: r + 1, Family.Sp: 2 * r, Family.SO_odd: 2 * r + 1,
            Family.SO_even: 2 * r}[kind]


def _family(args) -> GroupFamily:
    kind = parse_family(args.family)
    return GroupFamily(kind, _natural_dim(kind, args.n, getattr(args, "r", None)))


def _group(args) -> ff.GroupSpec:
    return ff.GroupSpec.of(args.kind, args.n, args.q)


# -- subcommands ---------------------------------------------------------------------------


def cmd_alpha(args) -> int:
    if args.group:
        entry = ex.alpha_exceptional(args.group, args.levi)
        emit("alpha", {"result": entry.to_json()}, None, args.out)
        return 0
    fam = _family(args)
    shape = LeviShape.of(fam, _ints(args.levi))
    res = ab.alpha_classical(shape)
    ok, slack = ab.check_ratio_bound(shape)
    payload = {"levi": shape.to_json(), "result": res.to_json(), "ratio_bound": ab.ratio_bound(shape),
               "ratio_bound_holds": ok, "slack": slack}
    emit("alpha", payload, None, args.out)
    return 0


def cmd_beta(args) -> int:
    sizes = _ints(args.sizes)
    res = ab.beta_bruteforce(sizes)
    lo, hi = ab.sandwich_bounds(sizes)
    payload = {"sizes": list(sizes), "value": res.value, "witness": [list(r) for r in res.witness_matrix],
               "lower": lo, "upper": hi}
    emit("beta", payload, None, args.out)
    return 0


def cmd_fbound(args) -> int:
    emit("fbound", {"result": ab.f_bound(args.r, args.q0).to_json()}, None, args.out)
    return 0


def cmd_table(args) -> int:
    if args.e7d6:
        rows = [r.to_json() for r in ex.E7D6_ROWS]
        report = ex.verify_e7_d6()
        emit("table", {"e7d6": rows, "check": report.to_json()}, rows, args.out)
        return 0
    if not args.group:
        raise UsageError("give --group or --e7d6")
    rows = [e.to_json() for e in ex.table_rows(args.group)]
    emit("table", {"group": args.group.upper(), "rows": rows}, rows, args.out)
    return 0


def cmd_group(args) -> int:
    g = _group(args)
    if args.action == "order":
        emit("group", {"group": g.to_json()}, None, args.out)
        return 0
    if args.action == "supp":
        if not args.matrix:
            raise UsageError("supp needs --matrix")
        m = ff.parse_matrix(args.matrix)
        if len(m) != g.n or not g.contains(m):
            raise UsageError(f"{args.matrix} is not in {g}")
        dims = [{"factor": list(f), "degree": d, "eigenspace_dim": k}
                for f, d, k in ff.eigenspace_dims(m, g.field)]
        emit("group", {"group": g.to_json(), "matrix": m, "supp": ff.supp(m, g.field), "factors": dims}, None, args.out)
        return 0
    t = ff.build_class_table(g)
    doc = t.to_json()
    emit("group", doc, doc["classes"], args.out)
    return 0


def cmd_chartable(args) -> int:
    table = sp.character_table_for(_group(args), seed=args.seed)
    doc = table.to_json()
    rows = [{"index": i, "degree": d} for i, d in enumerate(table.degrees)]
    emit("chartable", doc, rows, args.out)
    return 0


def cmd_walk(args) -> int:
    g = _group(args)
    t = ff.build_class_table(g)
    sc = ff.structure_constants(t)
    c = wk.class_from_rep(t, ff.parse_matrix(args.class_rep))
    ambient = None
    if args.levi:
        fam = GroupFamily(Family(g.kind), g.n)
        ambient = (fam, LeviShape.of(fam, _ints(args.levi)))
    eps = Fraction(args.eps_linf) if args.eps_linf else None
    report = wk.mixing_time(t, c, sc, eps_linf=eps, tmax=args.tmax, ambient=ambient)
    emit("walk", {"report": report.to_json()}, report.trajectory, args.out)
    return 0


def cmd_bounds(args) -> int:
    fam = _family(args)
    shape = LeviShape.of(fam, _ints(args.levi)) if args.levi else None
    bounds = wk.bound_catalog(fam, shape, args.supp, q=args.q)
    rows = [b.to_json() for b in bounds]
    emit("bounds", {"family": fam.type.value, "n": fam.natural_dim, "bounds": rows}, rows, args.out)
    return 0


def cmd_audit(args) -> int:
    g = _group(args)
    if args.kind_of_audit == "unipotent":
        check = sp.unipotent_degree_check(g)
        emit("audit", {"audit": "unipotent", "result": check.to_json()}, None, args.out)
        return 0 if check.present is not False else 1
    table = sp.character_table_for(g, seed=args.seed)
    if args.kind_of_audit == "steinberg":
        report = sp.steinberg_check(table)
        emit("audit", {"audit": "steinberg", "result": report.to_json()}, None, args.out)
        return 0 if report.ok else 1
    if not args.g or not args.levi:
        raise UsageError(f"audit {args.kind_of_audit} needs --g and --levi")
    m, blocks = ff.parse_matrix(args.g), _ints(args.levi)
    if args.kind_of_audit == "coset":
        check = sp.coset_identity_check(table, m, blocks)
        emit("audit", {"audit": "coset", "result": check.to_json()}, None, args.out)
        return 0 if check.max_residual < 1e-8 else 1
    report = sp.main1_bound_audit(table, m, blocks)
    emit("audit", {"audit": "main1", "result": report.to_json()}, None, args.out)
    return 0


def cmd_verify(args) -> int:
    if args.e7d6:
        report = ex.verify_e7_d6()
        emit("verify", {"e7d6": report.to_json()}, None, args.out)
        return 0 if report.ok else 1
    if args.suite == "all":
        numbers = None
    else:
        numbers = [int(x) for x in _ints(args.suite)]
        bad = [k for k in numbers if k not in acceptance.CRITERIA]
        if bad:
            raise UsageError(f"unknown criteria {bad}")
    results = acceptance.run(numbers)
    rows = [r.to_json() for r in results]
    if args.out == "text":
        for r in results:
            sys.stdout.write(r.line() + "\n")
    else:
        emit("verify", {"results": rows, "all_ok": all(r.ok for r in results)}, rows, args.out)
    return 0 if all(r.ok for r in results) else 1


def cmd_dims(args) -> int:
    """Sweep every Levi shape of the chosen families: alpha, bound, dimensions."""
    rows = []
    families = ab.classical_families(args.max_dim) if args.family == "all" else [_family(args)]
    for fam in families:
        for shape in ab.levi_shapes(fam):
            a = ab.alpha_classical(shape).value
            rows.append({"family": fam.type.value, "n": fam.natural_dim, "gl_factors": list(shape.gl_factors),
                         "classical_factor": shape.classical_factor, "dim_L": shape.dim(), "dim_G": dim_group(fam),
                         "alpha": a, "bound": ab.ratio_bound(shape)})
    emit("dims", {"rows": rows}, rows, args.out)
    return 0


# -- parser --------------------------------------------------------------------------------


def _add_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", choices=["json", "csv", "text"], default="json")


def _add_group_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=["GL", "SL"], type=str.upper, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liechar", description="Character-ratio exponents, class geometry and class walks.")
    parser.add_argument("--version", action="version", version=f"liechar {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alpha", help="alpha(L) for a classical Levi, or a printed exceptional value")
    p.add_argument("--family", default="GL")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--levi", required=True, help="GL factor sizes, e.g. 3,2,1 (or a label with --group)")
    p.add_argument("--group", help="exceptional group E6/E7/E8/F4/G2")
    _add_out(p)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("beta", help="exhaustive beta(n_1, ..., n_m)")
    p.add_argument("sizes")
    _add_out(p)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("fbound", help="the explicit f(r) constant")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q0", type=int, required=True)
    _add_out(p)
    p.set_defaults(func=cmd_fbound)

    p = sub.add_parser("table", help="printed exceptional alpha values")
    p.add_argument("--group")
    p.add_argument("--e7d6", action="store_true", help="the E7 > D6 class table")
    _add_out(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("group", help="finite GL/SL class data")
    _add_group_args(p)
    p.add_argument("action", nargs="?", choices=["classes", "order", "supp"], default="classes")
    p.add_argument("--matrix", help='e.g. "2,0;0,3"')
    _add_out(p)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("chartable", help="numerical character table")
    _add_group_args(p)
    p.add_argument("--seed", type=int, default=sp.SEED)
    _add_out(p)
    p.set_defaults(func=cmd_chartable)

    p = sub.add_parser("walk", help="exact class random walk")
    _add_group_args(p)
    p.add_argument("--class-rep", required=True)
    p.add_argument("--tmax", type=int, default=64)
    p.add_argument("--levi", help="block sizes of a Levi containing C(y), for the mixing bound")
    p.add_argument("--eps-linf", help="l_inf threshold as a rational, default 1/e")
    _add_out(p)
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("bounds", help="catalogue of mixing and covering bounds")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--levi")
    p.add_argument("--supp", type=int)
    p.add_argument("--q", type=int)
    _add_out(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("audit", help="character-level checks")
    p.add_argument("kind_of_audit", choices=["main1", "steinberg", "coset", "unipotent"])
    _add_group_args(p)
    p.add_argument("--g", help="group element, e.g. 2,0;0,1")
    p.add_argument("--levi", help="Levi block sizes")
    p.add_argument("--seed", type=int, default=sp.SEED)
    _add_out(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--suite", default="all", help="all, or comma-separated criterion numbers")
    p.add_argument("--e7d6", action="store_true")
    _add_out(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dims", help="CSV-friendly sweep over Levi shapes")
    p.add_argument("--family", default="all")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--max-dim", type=int, default=8)
    _add_out(p)
    p.set_defaults(func=cmd_dims)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write(f"liechar {args.command}: error: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
