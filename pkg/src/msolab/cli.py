"""Batch command-line interface.

    msolab build {tto|dtto} --theta Z --alpha Z --symbol J [--M N] [--out F]
    msolab check INPUT [--checks shift,blocks,adtto,analytic] [--tol T]
    msolab recover INPUT [--method {zbar|boundary}] [--tol T]
    msolab suite {acceptance|fuzz|convergence} [--seed S] [--cases N] ...

All payloads are JSON; inner functions also accept the shorthand "z^m" and
symbols the shorthand "z^k" / "z^-k". Exit codes: 0 all checks pass, 1 a
mathematical check failed, 2 invalid input or configuration.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

import numpy as np

from . import characterize, suites
from .errors import InputError, MsolabError
from .inner import BlaschkeProduct
from .laurent import LaurentPolynomial
from .operators import (BlockOperator, DenseComplexMatrix, SymbolFunction,
                        _matrix_from_json, _matrix_to_json, build_dtto,
                        build_tto)
from .spaces import model_basis

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


def _parse_symbol(text: str) -> LaurentPolynomial:
    text = text.strip()
    m = re.fullmatch(r"z(?:\^(-?\d+))?", text)
    if m:
        return LaurentPolynomial.monomial(int(m.group(1) or 1))
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse symbol {text!r}: {exc}") from exc
    return LaurentPolynomial.from_json(payload)


def _parse_inner(text: str) -> BlaschkeProduct:
    text = text.strip()
    if text.startswith("{"):
        try:
            return BlaschkeProduct.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"cannot parse inner function {text!r}: {exc}") from exc
    return BlaschkeProduct.parse(text)


def _read_payload(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise InputError(f"cannot read {path!r}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path!r}: {exc}") from exc


def _load_operator(payload: dict):
    if not isinstance(payload, dict):
        raise InputError("operator payload must be a JSON object")
    if "blocks" in payload:
        return BlockOperator.from_json(payload)
    if "entries" in payload:
        try:
            theta = BlaschkeProduct.from_json(payload["theta"])
            alpha = BlaschkeProduct.from_json(payload["alpha"])
            entries = _matrix_from_json(payload["entries"])
        except KeyError as exc:
            raise InputError(f"matrix payload missing {exc}") from exc
        return DenseComplexMatrix(entries, model_basis(theta),
                                  model_basis(alpha))
    raise InputError("operator payload needs either 'blocks' or 'entries'")


def _json_default(value):
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    raise TypeError(f"not JSON-serializable: {type(value)}")


def _emit(report, out: str | None):
    text = json.dumps(report, sort_keys=True, indent=2,
                      default=_json_default) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_build(args) -> int:
    theta = _parse_inner(args.theta)
    alpha = _parse_inner(args.alpha) if args.alpha else theta
    symbol = SymbolFunction(_parse_symbol(args.symbol))
    if args.kind == "tto":
        op = build_tto(theta, alpha, symbol)
        payload = {"theta": theta.to_json(), "alpha": alpha.to_json(),
                   "entries": _matrix_to_json(op.entries)}
    else:
        M = args.M
        if M is None:
            M = symbol.reach + theta.degree + alpha.degree + 6
        op = build_dtto(theta, alpha, symbol, M)
        payload = op.to_json()
    _emit(payload, args.out)
    return EXIT_OK


_CHECK_NAMES = ("shift", "blocks", "adtto", "analytic")


def _cmd_check(args) -> int:
    op = _load_operator(_read_payload(args.input))
    selected = [c.strip() for c in args.checks.split(",") if c.strip()]
    for name in selected:
        if name not in _CHECK_NAMES:
            raise InputError(f"unknown check {name!r}; expected subset of "
                             f"{_CHECK_NAMES}")
    if not selected:
        raise InputError("no checks selected")
    is_block = isinstance(op, BlockOperator)
    if not is_block and set(selected) - {"shift"}:
        raise InputError("blocks/adtto/analytic checks require a dtto payload")
    tol = args.tol
    reports = []
    extra = {}
    for name in selected:
        if name == "shift":
            if is_block:
                rep = characterize.shift_invariance_defect(
                    op, op.domain_basis(), op.codomain_basis(), tol=tol)
            else:
                rep = characterize.shift_invariance_defect(
                    op, op.domain, op.codomain, tol=tol)
            reports.append(rep)
        elif name == "blocks":
            reports.extend(characterize.check_block_conditions(op, tol=tol))
        elif name == "adtto":
            verdict = characterize.check_adtto(op, tol=tol)
            reports.extend(verdict.reports)
        else:
            verdict = characterize.is_analytic_adtto(
                op, tol=tol if tol is not None else 1e-11)
            extra["analytic"] = {"analytic": verdict.analytic,
                                 "minus_norm": verdict.minus_norm,
                                 "witness": list(verdict.witness)
                                 if verdict.witness else None}
    report = {"checks": selected,
              "reports": [rep.to_json() for rep in reports]}
    report.update(extra)
    ok = all(rep.passed for rep in reports) and all(
        v.get("analytic", True) for v in extra.values())
    report["pass"] = bool(ok)
    _emit(report, args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_recover(args) -> int:
    op = _load_operator(_read_payload(args.input))
    if not isinstance(op, BlockOperator):
        raise InputError("symbol recovery requires a dtto payload")
    symbol, residual = characterize.recover_symbol(op, args.method)
    tol = args.tol if args.tol is not None else characterize.default_tolerance(
        op.theta, op.alpha)
    report = {"method": args.method,
              "symbol": symbol.to_json(),
              "mean": [symbol.mean.real, symbol.mean.imag],
              "residual": residual,
              "tolerance": tol,
              "pass": residual <= tol}
    _emit(report, args.out)
    return EXIT_OK if residual <= tol else EXIT_CHECK_FAILED


def _cmd_suite(args) -> int:
    config = suites.SuiteConfig(
        theta=_parse_inner(args.theta) if args.theta else None,
        alpha=_parse_inner(args.alpha) if args.alpha else None,
        symbol=_parse_symbol(args.symbol) if args.symbol else None,
        M=args.M, tol=args.tol, seed=args.seed, suite=args.name,
        cases=args.cases, workers=args.workers)
    started = time.monotonic()
    report = suites.run_suite(args.name, config)
    print(f"suite {args.name}: {time.monotonic() - started:.1f}s",
          file=sys.stderr)
    _emit(report, args.out)
    return EXIT_OK if report["pass"] else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="msolab",
        description="Truncated and dual truncated Toeplitz operators: "
                    "build, check, recover, verify.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build an operator and dump its JSON")
    p.add_argument("kind", choices=("tto", "dtto"))
    p.add_argument("--theta", required=True,
                   help="inner function: 'z^m' or Blaschke JSON")
    p.add_argument("--alpha", help="codomain inner function (default: theta)")
    p.add_argument("--symbol", required=True,
                   help="symbol: 'z^k' or {\"coeffs\": [[k,re,im],...]}")
    p.add_argument("--M", type=int, help="truncation depth (dtto only)")
    p.add_argument("--out", help="write the payload to a file")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("check", help="run membership checks on an operator")
    p.add_argument("input", help="operator JSON file, or '-' for stdin")
    p.add_argument("--checks", default="adtto",
                   help="comma list from shift,blocks,adtto,analytic")
    p.add_argument("--tol", type=float)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("recover", help="recover the symbol of a dtto")
    p.add_argument("input", help="operator JSON file, or '-' for stdin")
    p.add_argument("--method", choices=("zbar", "boundary"), default="zbar")
    p.add_argument("--tol", type=float)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_recover)

    p = sub.add_parser("suite", help="run a verification suite")
    p.add_argument("name", choices=sorted(suites.SUITES))
    p.add_argument("--seed", type=int, default=suites.DEFAULT_SEED)
    p.add_argument("--cases", type=int)
    p.add_argument("--theta")
    p.add_argument("--alpha")
    p.add_argument("--symbol")
    p.add_argument("--M", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--workers", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, matching the input-error contract
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, MsolabError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
