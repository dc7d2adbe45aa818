"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 catalog mismatch,
3 resource cap hit, 4 a requested verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .catalog import CATALOG, CatalogError, catalog_lookup, compare_with_catalog
from .coset import DEFAULT_MAX_CELLS, EnumerationExceeded
from .groups import BoundExceeded, GroupError, abelianization, derived_subgroup
from .named import GroupSpecError, _split_top, make_named_group
from .tensor import (
    DEFAULT_ORDER_CAP,
    InfeasibleMethod,
    TensorSquare,
    closed_form,
    tensor_square_presentation,
)
from . import theorems

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3, 4
VERIFIERS = ("thm31", "cor47", "thm48", "green")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tensorsq", description="Nonabelian tensor squares and the invariants they determine.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="compute pi3, pi2s and h2 of a group")
    c.add_argument("--group", action="append", required=True, help="group spec; repeat for a batch")
    c.add_argument("--method", choices=("auto", "presentation", "closed-form"), default="auto")
    c.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS, help="coset table cell cap")
    c.add_argument("--cap", type=int, default=DEFAULT_ORDER_CAP, help="largest |G| for the presentation")
    c.add_argument("--check-catalog", action="store_true")
    c.add_argument("--verify", action="append", choices=VERIFIERS + ("all",), default=[])
    c.add_argument("--json", metavar="PATH", help="write the JSON report to PATH, or - for stdout")
    c.add_argument("--dump-presentation", metavar="PATH")
    c.add_argument("--emit-table", metavar="PATH", help="write the coset table as CSV")
    c.add_argument("--no-timing", action="store_true", help="omit the timing field")
    c.add_argument("--parallel", type=int, default=1, metavar="N", help="worker processes for a batch")

    k = sub.add_parser("catalog", help="list the expected-value catalog")
    k.add_argument("--json", metavar="PATH")
    return parser


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _decomposition(spec: str):
    """(N, H, action) for an sdp spec or a direct product, else None."""
    from .named import _action

    s = spec.replace(" ", "")
    if s.startswith("sdp(") and s.endswith(")"):
        n_spec, h_spec, act = _split_top(s[4:-1], ",")
        N, H = make_named_group(n_spec), make_named_group(h_spec)
        return N, H, _action(N, H, act)
    factors = _split_top(s, "x")
    if len(factors) > 1:
        N = make_named_group(factors[0])
        H = make_named_group("x".join(factors[1:]))
        return N, H, None
    return None


def compute_report(spec: str, opts: dict) -> tuple[dict, int]:
    """Report and exit code for one group spec."""
    start = time.perf_counter()
    method = opts["method"]
    cap, max_cells = opts["cap"], opts["max_cells"]
    G = make_named_group(spec)
    name = spec.replace(" ", "")
    Gab = abelianization(G)

    if opts.get("dump_presentation"):
        P, _ = tensor_square_presentation(G, cap)
        _write(opts["dump_presentation"], P.to_text())

    TS = None
    use_presentation = method == "presentation" or (method == "auto" and not G.is_abelian())
    if use_presentation:
        TS = TensorSquare(G, cap=cap, max_cells=max_cells)
        inv = TS.invariants()
    else:
        inv = closed_form(G, name)
    if opts.get("emit_table"):
        TS = TS or TensorSquare(G, cap=cap, max_cells=max_cells)
        _write(opts["emit_table"], TS.table.to_csv())

    code = EXIT_OK
    report = {
        "schema": SCHEMA,
        "input": spec,
        "method": inv.method,
        "group": {
            "order": G.order(),
            "derived_order": derived_subgroup(G).order(),
            "abelianization": Gab.to_json(),
        },
        "invariants": inv.to_json(),
        "catalog": None,
        "verifications": {},
    }

    if opts.get("check_catalog"):
        try:
            rec = catalog_lookup(name)
        except CatalogError:
            report["catalog"] = {"checked": False, "reason": "not in catalog"}
        else:
            bad = compare_with_catalog(name, inv.pi3, inv.pi2s, inv.h2)
            report["catalog"] = {"checked": True, "match": not bad, "mismatches": bad, "record": rec.to_json()}
            if bad:
                code = EXIT_MISMATCH

    wanted = set(opts.get("verify") or [])
    if "all" in wanted:
        wanted = set(VERIFIERS)

    def need_ts():
        nonlocal TS
        if TS is None:
            TS = TensorSquare(G, cap=cap, max_cells=max_cells)
        return TS

    ver = report["verifications"]
    for key in sorted(wanted):
        if key == "green":
            ver[key] = theorems.green_bound_check(G, inv.pi2s).to_json()
        elif key == "thm48":
            ver[key] = theorems.odd_splitting(need_ts()).to_json()
        elif key == "cor47":
            ver[key] = theorems.verify_complement_case(G, need_ts() if G.order() <= cap else None).to_json()
        elif key == "thm31":
            dec = _decomposition(spec)
            if dec is None:
                ver[key] = {"status": theorems.NA, "reason": "spec is not a semidirect or direct product"}
            else:
                N, H, phi = dec
                ver[key] = theorems.verify_semidirect_decomposition(
                    N, H, phi, cap=cap, max_cells=max_cells
                ).to_json()
    if code == EXIT_OK and any(v.get("status") == theorems.FAIL for v in ver.values()):
        code = EXIT_VERIFY
    if not opts.get("no_timing"):
        report["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    return report, code


def _run_one(args) -> tuple[dict | None, int, str | None]:
    spec, opts = args
    try:
        report, code = compute_report(spec, opts)
        return report, code, None
    except (GroupSpecError, InfeasibleMethod, GroupError, ValueError) as exc:
        return None, EXIT_USAGE, f"{spec}: {exc}"
    except (BoundExceeded, EnumerationExceeded) as exc:
        return None, EXIT_CAP, f"{spec}: {exc}"


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "catalog":
        data = {"schema": SCHEMA, "records": [r.to_json() for r in CATALOG.values()]}
        if args.json:
            _write(args.json, dumps(data))
        else:
            for r in CATALOG.values():
                flag = "" if r.computable else "  (lookup only)"
                pi3 = "?" if r.pi3 is None else str(r.pi3)
                print(f"{r.name:10s} pi3={pi3:12s} pi2s={r.pi2s!s:16s} {r.statement}{flag}")
        return EXIT_OK

    opts = {
        "method": args.method,
        "cap": args.cap,
        "max_cells": args.max_cells,
        "check_catalog": args.check_catalog,
        "verify": args.verify,
        "dump_presentation": args.dump_presentation,
        "emit_table": args.emit_table,
        "no_timing": args.no_timing,
    }
    if len(args.group) > 1 and (args.dump_presentation or args.emit_table):
        parser.error("--dump-presentation and --emit-table take a single --group")
    jobs = [(spec, opts) for spec in args.group]
    if args.parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]

    code = EXIT_OK
    reports = []
    for report, c, err in results:
        if err:
            print(f"tensorsq: error: {err}", file=sys.stderr)
        if report is not None:
            reports.append(report)
        code = max(code, c)

    if reports:
        payload = reports[0] if len(args.group) == 1 else {"schema": SCHEMA, "reports": reports}
        if args.json:
            _write(args.json, dumps(payload))
        else:
            for r in reports:
                _print_summary(r)
    return code


def _fmt(inv) -> str:
    if inv is None:
        return "?"
    parts = [f"Z^{inv['rank']}"] if inv["rank"] else []
    parts += [f"Z/{d}" for d in inv["factors"]]
    return " x ".join(parts) or "0"


def _print_summary(r: dict) -> None:
    inv = r["invariants"]
    print(f"{r['input']}  |G| = {r['group']['order']}  method = {r['method']}")
    print(f"  pi3  = {_fmt(inv['pi3'])}")
    print(f"  pi2s = {_fmt(inv['pi2s'])}")
    print(f"  h2   = {_fmt(inv['h2'])}")
    for key in ("order_tensor", "order_exterior", "order_symmetric"):
        print(f"  {key} = {inv[key] if inv[key] is not None else '?'}")
    if r["catalog"] is not None:
        cat = r["catalog"]
        print(f"  catalog: {'match' if cat.get('match') else cat.get('reason') or 'MISMATCH ' + ','.join(cat['mismatches'])}")
    for k, v in r["verifications"].items():
        print(f"  verify {k}: {v['status']}")


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
