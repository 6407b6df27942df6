"""Command-line surface: basis listings, multiplication tables, verification.

Reports are canonical JSON (sorted keys, integers as decimal strings,
rationals as "num/den"), so identical inputs produce byte-identical
output; wall-clock timing goes to stderr only.  Exit codes: 0 ok,
1 verification violation, 2 usage error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import blocks, cartan, mackey
from .errors import TsringError
from .exactarith import QQ, ZZ, scalar_ring
from .groupmodel import make_params
from .tring import basis_label, basis_to_json, sort_key, tring

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

SCHEMA = "tsring/1"

VERIFY_CHECKS = (
    "oracle",
    "assoc",
    "theorem-a",
    "theorem-b",
    "theorem-c",
    "theorem-d",
    "semisimple",
)


def _report(command: str, params, status: str, payload) -> str:
    doc = {
        "schema": SCHEMA,
        "command": command,
        "params": {"p": str(params.p), "n": str(params.n), "e": str(params.e)},
        "status": status,
        "payload": payload,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _write(text: str, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _parse_fields(spec: str):
    fields = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        if token == "Q":
            fields.append(QQ)
        elif token.startswith("F") and token[1:].isdigit():
            fields.append(scalar_ring(token))
        else:
            raise ValueError(f"bad field spec {token!r}")
    if not fields:
        raise ValueError("empty field list")
    return fields


# ------------------------------------------------------------------ commands


def cmd_basis(args) -> int:
    params = make_params(args.p, args.n, args.e)
    ring = tring(params)
    payload = {
        "count": str(ring.dimension()),
        "elements": [basis_to_json(b) for b in ring.basis],
    }
    _write(_report("basis", params, "ok", payload), args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    params = make_params(args.p, args.n, args.e)
    ring = tring(params)
    rows = []
    for a in ring.basis:
        for b in ring.basis:
            prod = ring.mult_basis(a, b)
            rows.append(
                (
                    a,
                    b,
                    sorted(prod.items(), key=lambda kv: sort_key(kv[0])),
                )
            )
    if args.format == "json":
        payload = {
            "rows": [
                {
                    "a": basis_to_json(a),
                    "b": basis_to_json(b),
                    "product": [
                        {"basis": basis_to_json(c), "coeff": str(v)}
                        for c, v in prod
                    ],
                }
                for a, b, prod in rows
            ]
        }
        _write(_report("table", params, "ok", payload), args.out)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["a", "b", "product"])
        for a, b, prod in rows:
            term = "+".join(f"{v}*{basis_label(c)}" for c, v in prod)
            writer.writerow([basis_label(a), basis_label(b), term])
        _write(buf.getvalue(), args.out)
    return EXIT_OK


def _check_oracle(params, ring):
    orc = mackey.oracle(params)
    compared = 0
    for a in ring.basis:
        for b in ring.basis:
            if orc.oracle_mult(a, b) != ring.mult_basis(a, b):
                return "violation", {
                    "pair": [basis_label(a), basis_label(b)],
                    "compared": str(compared),
                }
            compared += 1
    return "ok", {"compared": str(compared)}


def _check_assoc(params, ring):
    elems = [ring.from_basis(ZZ, b) for b in ring.basis]
    checked = 0
    for x in elems:
        for y in elems:
            xy = ring.mult(x, y)
            for z in elems:
                if ring.mult(xy, z) != ring.mult(x, ring.mult(y, z)):
                    return "violation", {"checked": str(checked)}
                checked += 1
    return "ok", {"checked": str(checked)}


def _check_theorem_a(params, ring):
    c = cartan.cartan_matrix(params)
    certs = cartan.orthogonal_projective_idempotents(c)
    ok = len(certs) == params.e - 1 and all(
        cert.checks["idempotent"]
        and cert.checks["rank_one_corner"]
        and len(cert.checks["orthogonal_to"]) == len(certs) - 1
        for cert in certs
    )
    return ("ok" if ok else "violation"), {"count": str(len(certs))}


def _check_theorem_b(params, ring, fields):
    results = []
    status = "ok"
    for K in fields:
        if K.characteristic == params.p:
            results.append({"field": K.name, "status": "skipped (char p)"})
            continue
        central = cartan.projective_identity_is_central(ring, K)
        ident = cartan.projective_identity_element(ring, K)
        idem = ring.mult(ident, ident) == ident
        ok = central and idem
        if not ok:
            status = "violation"
        results.append({"field": K.name, "central": central, "idempotent": idem})
    return status, {"fields": results}


def _check_theorem_c(params, ring, scan_bound):
    decomposition = blocks.integral_primitive_decomposition(params)
    report = blocks.rational_central_idempotent_scan(params, bound=scan_bound)
    ok = report.only_zero_and_one and len(decomposition) == params.e
    payload = {
        "decomposition_size": str(len(decomposition)),
        "scan_primitives": str(report.primitive_count),
        "scan_sums": str(report.sums_checked),
        "integral_masks": [str(m) for m in report.integral_masks],
        "out_of_verification_scope": [
            "primitivity of the residual idempotent",
            "global bound on orthogonal idempotent families over Z",
        ],
    }
    return ("ok" if ok else "violation"), payload


def _check_theorem_d(params, ring, fields):
    results = []
    status = "ok"
    for K in fields:
        if K.characteristic == params.p:
            results.append({"field": K.name, "status": "skipped (char p)"})
            continue
        decomp = blocks.central_decomposition(params, K)
        results.append({"field": K.name, "dims": [str(d) for d in decomp.dims]})
    return status, {"fields": results}


def _check_semisimple(params, ring, fields):
    results = []
    status = "ok"
    for K in fields:
        q = K.characteristic
        decision = blocks.semisimplicity_decide(params, q)
        expected = blocks.stated_criterion(params, q)
        verdict_yes = decision.verdict == "semisimple"
        if decision.verdict == "inconclusive":
            status = "inconclusive"
        elif verdict_yes != expected:
            status = "violation"
        results.append(
            {
                "field": K.name,
                "decision": "Yes" if verdict_yes else "No",
                "method": decision.method,
                "aut_order_invertible": "Yes" if expected else "No",
            }
        )
    return status, {"fields": results}


def cmd_verify(args) -> int:
    params = make_params(args.p, args.n, args.e)
    ring = tring(params)
    which = [w.strip() for w in args.which.split(",") if w.strip()]
    for w in which:
        if w not in VERIFY_CHECKS:
            raise ValueError(f"unknown check {w!r}")
    fields = _parse_fields(args.field) if args.field else [QQ]
    checks = []
    overall = "ok"
    for w in which:
        if w == "oracle":
            status, payload = _check_oracle(params, ring)
        elif w == "assoc":
            status, payload = _check_assoc(params, ring)
        elif w == "theorem-a":
            status, payload = _check_theorem_a(params, ring)
        elif w == "theorem-b":
            status, payload = _check_theorem_b(params, ring, fields)
        elif w == "theorem-c":
            status, payload = _check_theorem_c(params, ring, args.scan_bound)
        elif w == "theorem-d":
            status, payload = _check_theorem_d(params, ring, fields)
        else:
            status, payload = _check_semisimple(params, ring, fields)
        checks.append({"name": w, "status": status, "details": payload})
        if status == "violation":
            overall = "violation"
        elif status == "inconclusive" and overall == "ok":
            overall = "inconclusive"
    _write(_report("verify", params, overall, {"checks": checks}), args.out)
    if overall == "violation":
        return EXIT_VIOLATION
    if overall == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# ---------------------------------------------------------------- dispatcher


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsring",
        description="exact bimodule class ring computations for D semidirect E",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--p", type=int, required=True, help="the prime p")
        p.add_argument("--n", type=int, required=True, help="|D| = p^n")
        p.add_argument("--e", type=int, required=True, help="|E| = e, e | p-1")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0, help="reserved; unused")

    p_basis = sub.add_parser("basis", help="list the canonical basis")
    common(p_basis)

    p_table = sub.add_parser("table", help="full structure-constant table")
    common(p_table)
    p_table.add_argument("--format", choices=("json", "csv"), default="json")

    p_verify = sub.add_parser("verify", help="run verification checks")
    common(p_verify)
    p_verify.add_argument(
        "--which",
        default=",".join(VERIFY_CHECKS),
        help="comma list from: " + ", ".join(VERIFY_CHECKS),
    )
    p_verify.add_argument(
        "--field",
        default="Q",
        help='comma list of "Q" or "F<q>" with q prime',
    )
    p_verify.add_argument(
        "--scan-bound",
        type=int,
        default=20,
        dest="scan_bound",
        help="cap on primitive central idempotents in the scan",
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    started = time.monotonic()
    try:
        if args.command == "basis":
            code = cmd_basis(args)
        elif args.command == "table":
            code = cmd_table(args)
        else:
            code = cmd_verify(args)
    except (TsringError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"elapsed: {time.monotonic() - started:.3f}s", file=sys.stderr)
    return code


def entry():
    raise SystemExit(main())
