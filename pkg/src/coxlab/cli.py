"""Command-line interface: ``coxlab <command> ...``.

Exit status is 0 when every requested check passed, 1 when one failed and 2
for usage errors (bad arguments, unknown types, groups over the cap).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from coxlab.arrangement import (
    build_lattice,
    chamber_count,
    characteristic_polynomial,
    os_exponents,
)
from coxlab.errors import CoxlabError, GroupTooLarge, UnknownTypeError
from coxlab.exactlinalg import mat_charpoly
from coxlab.group import LARGE_ORDER, component_degrees, predicted_order
from coxlab.hurwitz import export_dual_presentation
from coxlab.identities import (
    DEFAULT_SUITE_TYPES,
    IDENTITIES,
    IdentityReport,
    canonical_type,
    get_context,
    run_check,
    run_suite,
)
from coxlab.laplacian import w_laplacian
from coxlab.ncposet import zeta_value
from coxlab.rootsys import build_root_system, decompose_components

__all__ = ["build_parser", "main"]


class UsageError(Exception):
    pass


def _emit(payload, fmt: str, table_lines: list[str]):
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(table_lines))


def _report_table(reports: list[IdentityReport], timings: bool) -> list[str]:
    rows = [("identity", "type", "result", "lhs", "rhs") + (("ms",) if timings else ())]
    for r in reports:
        row = (r.identity, r.group_type, "pass" if r.passed else "FAIL", _flat(r.lhs), _flat(r.rhs))
        if timings:
            row += (f"{r.millis:.1f}" if r.millis is not None else "",)
        rows.append(row)
    widths = [max(len(str(row[i])) for row in rows) for i in range(len(rows[0]))]
    return ["  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip() for row in rows]


def _flat(x) -> str:
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_flat(v) for v in x) + "]"
    return str(x)


def _type_arg(s: str) -> str:
    try:
        return canonical_type(s)
    except UnknownTypeError as exc:
        raise UsageError(str(exc)) from exc


# commands -----------------------------------------------------------------


def cmd_group_info(args) -> int:
    name = _type_arg(args.type)
    rs = build_root_system(name)
    degs = component_degrees(rs)
    order = predicted_order(rs)
    enumerated = None
    if order <= LARGE_ORDER or args.allow_large:
        enumerated = get_context(name, args.allow_large).gt.order
    payload = {
        "type": name,
        "rank": rs.rank,
        "reflections": rs.N,
        "coxeter_numbers": decompose_components(rs).multiset,
        "degrees": [d for _, ds in degs for d in ds],
        "order_from_degrees": str(order),
        "order_enumerated": None if enumerated is None else str(enumerated),
        "field": f"Q(sqrt({rs.field}))" if rs.field else "Q",
        "model": "abstract dihedral" if rs.abstract else "simple-root coordinates",
    }
    lines = [f"{k}: {v}" for k, v in payload.items()]
    _emit(payload, args.format or "json", lines)
    return 0


def cmd_lattice_summary(args) -> int:
    name = _type_arg(args.type)
    rs = build_root_system(name)
    lat = build_lattice(rs)
    chi = characteristic_polynomial(lat, lat.top)
    payload = {
        "type": name,
        "flats": len(lat),
        "flats_by_dim": {str(k): v for k, v in lat.graded_counts().items()},
        "characteristic_polynomial": str(chi),
        "exponents": os_exponents(lat, lat.top),
        "chambers": str(chamber_count(lat, lat.top)),
    }
    lines = [f"{k}: {v}" for k, v in payload.items()]
    _emit(payload, args.format or "json", lines)
    return 0


def cmd_laplacian_charpoly(args) -> int:
    name = _type_arg(args.type)
    rs = build_root_system(name)
    lap = w_laplacian(rs)
    chi = mat_charpoly(lap.matrix)
    payload = {
        "type": name,
        "charpoly": str(chi),
        "coefficients": [str(c) for c in chi.coefficients],
        "analytic": lap.analytic,
    }
    _emit(payload, args.format or "table", [str(chi)])
    return 0


def cmd_verify(args) -> int:
    name = _type_arg(args.type)
    kwargs = {"allow_large": args.allow_large}
    if args.k is not None:
        if args.identity not in ("chapoton", "fr1", "fr2", "fr-simples"):
            raise UsageError(f"--k does not apply to {args.identity}")
        kwargs["kmax"] = args.k
    if args.r is not None:
        if args.identity != "fr2":
            raise UsageError("--r only applies to fr2")
        kwargs["r"] = args.r
    rep = run_check(args.identity, name, timings=args.timings, **kwargs)
    fmt = args.format or "json"
    _emit(rep.to_dict(args.timings), fmt, _report_table([rep], args.timings) + rep.notes)
    return 0 if rep.passed else 1


def cmd_nc_zeta(args) -> int:
    name = _type_arg(args.type)
    if args.k < 1:
        raise UsageError("--k must be positive")
    ctx = get_context(name, args.allow_large)
    value = zeta_value(ctx.nc, args.k)
    _emit({"type": name, "k": args.k, "zeta": str(value)}, args.format or "table", [str(value)])
    return 0


def cmd_hurwitz_export(args) -> int:
    name = _type_arg(args.type)
    ctx = get_context(name, args.allow_large)
    pres = export_dual_presentation(ctx.rs, ctx.factorizations)
    out = Path(args.out)
    json_out = out.with_suffix(".json") if out.suffix != ".json" else out.with_suffix(".json.json")
    out.write_text(pres.to_text())
    json_out.write_text(pres.to_json())
    payload = {"type": name, "generators": len(pres.generators), "words": len(pres.words),
               "text": str(out), "json": str(json_out)}
    lines = [f"{k}: {v}" for k, v in payload.items()]
    _emit(payload, args.format or "table", lines)
    return 0


def cmd_suite_all(args) -> int:
    types = [_type_arg(t) for t in (args.types or DEFAULT_SUITE_TYPES)]
    identities = args.identities or None
    if identities:
        unknown = [i for i in identities if i not in IDENTITIES]
        if unknown:
            raise UsageError(f"unknown identities: {', '.join(unknown)}")
    reports = run_suite(types, identities, jobs=args.jobs, timings=args.timings, allow_large=args.allow_large)
    fmt = args.format or "json"
    failed = sum(not r.passed for r in reports)
    lines = _report_table(reports, args.timings) + [f"{len(reports) - failed}/{len(reports)} passed"]
    _emit([r.to_dict(args.timings) for r in reports], fmt, lines)
    return 0 if failed == 0 else 1


# parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=None,
                        help="output format (default depends on the command)")
    common.add_argument("--allow-large", action="store_true",
                        help=f"allow enumerating groups of order above {LARGE_ORDER}")
    common.add_argument("--timings", action="store_true", help="include wall-clock milliseconds in reports")

    parser = argparse.ArgumentParser(prog="coxlab", description="Exact verification engine for finite reflection groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    group = sub.add_parser("group").add_subparsers(dest="action", required=True)
    p = group.add_parser("info", parents=[common], help="rank, reflections, degrees and order")
    p.add_argument("type")
    p.set_defaults(func=cmd_group_info)

    lattice = sub.add_parser("lattice").add_subparsers(dest="action", required=True)
    p = lattice.add_parser("summary", parents=[common], help="flat counts, characteristic polynomial, exponents")
    p.add_argument("type")
    p.set_defaults(func=cmd_lattice_summary)

    lap = sub.add_parser("laplacian").add_subparsers(dest="action", required=True)
    p = lap.add_parser("charpoly", parents=[common], help="det(tI + L_W)")
    p.add_argument("type")
    p.set_defaults(func=cmd_laplacian_charpoly)

    p = sub.add_parser("verify", parents=[common], help="run one identity check")
    p.add_argument("identity", choices=IDENTITIES)
    p.add_argument("type")
    p.add_argument("--k", type=int, default=None, help="largest k for chapoton / fr1 / fr2 / fr-simples")
    p.add_argument("--r", type=int, default=None, help="flat dimension for fr2 (default: all)")
    p.set_defaults(func=cmd_verify)

    nc = sub.add_parser("nc").add_subparsers(dest="action", required=True)
    p = nc.add_parser("zeta", parents=[common], help="number of multichains of length k in NC(W)")
    p.add_argument("type")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_nc_zeta)

    hur = sub.add_parser("hurwitz").add_subparsers(dest="action", required=True)
    p = hur.add_parser("export", parents=[common], help="write the dual braid presentation")
    p.add_argument("type")
    p.add_argument("--out", required=True, help="text output path; a .json mirror is written alongside")
    p.set_defaults(func=cmd_hurwitz_export)

    suite = sub.add_parser("suite").add_subparsers(dest="action", required=True)
    p = suite.add_parser("all", parents=[common], help="run every applicable identity on a set of types")
    p.add_argument("--types", nargs="+", default=None)
    p.add_argument("--identities", nargs="+", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_suite_all)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, UnknownTypeError, GroupTooLarge, ValueError) as exc:
        print(f"coxlab: error: {exc}", file=sys.stderr)
        return 2
    except CoxlabError as exc:
        print(f"coxlab: failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
