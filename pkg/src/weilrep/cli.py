"""Batch front-end: a thin client over the same functions the HTTP service wraps.

Exit codes: 0 all checks passed, 1 a suite recorded failures, 2 bad usage
or invalid parameters.  Identical flags and seed produce byte-identical
output; wall time goes to stderr only.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .suites import (SUITE_NAMES, character_table_rows, gauss_payload,
                     kernel_payload, run_suite)


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _report_csv(report_dict: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["suite", "p", "N", "seed", "checks_run", "passed",
                     "check", "inputs", "expected", "actual"])
    writer.writerow([report_dict["suite"], report_dict["p"], report_dict["N"],
                     report_dict["seed"], report_dict["checks_run"],
                     report_dict["passed"], "", "", "", ""])
    for f in report_dict["failures"]:
        writer.writerow(["", "", "", "", "", "", f["check"], f["inputs"],
                         f["expected"], f["actual"]])
    return buf.getvalue()


def _chartable_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["g", "in_U", "ch_rho", "trace_check"])
    for row in rows:
        writer.writerow([row["g"], row["in_U"],
                         json.dumps(row["ch_rho"], separators=(",", ":")),
                         row["trace_check"]])
    return buf.getvalue()


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.p, args.N, seed=args.seed,
                       max_checks=args.max_checks)
    payload = report.to_json_dict()
    text = _json_text(payload) if args.format == "json" else _report_csv(payload)
    _emit(text, args.out)
    print(f"suite={report.suite} p={report.p} N={report.N} checks={report.checks_run} "
          f"failures={len(report.failures)} wall={report.wall_time:.2f}s", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_chartable(args) -> int:
    rows = character_table_rows(args.p, args.N, elements=args.element or None,
                                seed=args.seed, include_complex=args.complex)
    if args.format == "json":
        text = _json_text({"p": args.p, "N": args.N, "rows": rows})
    else:
        text = _chartable_csv(rows)
    _emit(text, args.out)
    return 0


def cmd_kernel(args) -> int:
    payload = kernel_payload(args.p, args.N, args.g, seed=args.seed,
                             include_complex=args.complex)
    _emit(_json_text(payload), args.out)
    return 0


def cmd_gauss(args) -> int:
    _emit(_json_text(gauss_payload(args.p)), args.out)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("weilrep.service:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weilrep",
        description="Exact verification of Heisenberg/Weil representation identities over F_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("--p", type=int, default=3, help="odd prime modulus")
    verify.add_argument("--N", type=int, default=1, help="half the dimension of V")
    verify.add_argument("--suite", default="all", choices=list(SUITE_NAMES) + ["all"])
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--format", choices=["json", "csv"], default="json")
    verify.add_argument("--max-checks", type=int, default=None)
    verify.add_argument("--out", default=None, help="write the report to a file")
    verify.set_defaults(func=cmd_verify)

    chartable = sub.add_parser("chartable", help="emit the character table")
    chartable.add_argument("--p", type=int, default=3)
    chartable.add_argument("--N", type=int, default=1)
    chartable.add_argument("--seed", type=int, default=42)
    chartable.add_argument("--element", action="append", default=[],
                           help="matrix string 'a,b;c,d' (required for N >= 2; repeatable)")
    chartable.add_argument("--format", choices=["json", "csv"], default="json")
    chartable.add_argument("--complex", action="store_true",
                           help="include float embeddings next to exact values")
    chartable.add_argument("--out", default=None)
    chartable.set_defaults(func=cmd_chartable)

    kernel = sub.add_parser("kernel", help="dump one kernel fiber K_g")
    kernel.add_argument("--p", type=int, default=3)
    kernel.add_argument("--N", type=int, default=1)
    kernel.add_argument("--g", required=True, help="matrix string 'a,b;c,d'")
    kernel.add_argument("--seed", type=int, default=42)
    kernel.add_argument("--complex", action="store_true")
    kernel.add_argument("--out", default=None)
    kernel.set_defaults(func=cmd_kernel)

    gauss = sub.add_parser("gauss", help="the quadratic Gauss sum at p")
    gauss.add_argument("--p", type=int, required=True)
    gauss.add_argument("--out", default=None)
    gauss.set_defaults(func=cmd_gauss)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
