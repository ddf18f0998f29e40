"""Command-line driver.

Exit codes: 0 success or pass, 1 well-formed negative result (not
associative, no form, suite failed), 2 input error, 3 guard rail.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import finops
from .boolcls import (
    BoolForm,
    all_probe_values,
    classify_boolean,
    probe_path,
)
from .errors import InfeasibleSize, InputError
from .finops import FiniteOp, derive, is_associative

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


@dataclass
class CliConfig:
    max_cells: int = finops.DEFAULT_MAX_CELLS
    json: bool = False
    threads: int = 0


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON in {path}: {exc}") from exc


def _emit(cfg: CliConfig, payload: dict, human: str) -> None:
    if cfg.json:
        print(json.dumps(payload, sort_keys=False))
    else:
        print(human)


def cmd_check(args, cfg: CliConfig) -> int:
    f = FiniteOp.from_json(_read_json(args.input))
    ok = is_associative(f)
    _emit(cfg, {"k": f.k, "n": f.n, "associative": ok},
          "associative" if ok else "not associative")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_classify(args, cfg: CliConfig) -> int:
    f = FiniteOp.from_json(_read_json(args.input))
    if f.k != 2:
        raise InputError(f"classification needs k = 2, got k = {f.k}")
    desc = classify_boolean(f)
    payload = desc.to_json()
    human = f"{desc.form.value} (n={desc.n})"
    if args.probes:
        if f.n < 2:
            raise InputError("probe classification needs n >= 2")
        probe_desc, case, reads = probe_path(f)
        payload["probes"] = all_probe_values(f)
        payload["read"] = list(reads)
        payload["case"] = case
        payload["probe_form"] = probe_desc.form.value
        human += f"\nprobe tree: case {case} -> {probe_desc.form.value}"
        human += "".join(f"\n  ({name}) = {value}" for name, value in payload["probes"].items())
    _emit(cfg, payload, human)
    return EXIT_NEGATIVE if desc.form is BoolForm.NOT_ASSOCIATIVE else EXIT_OK


def cmd_classify_poly(args, cfg: CliConfig) -> int:
    from .mlpoly import MultilinearPoly, classify_marmat, is_associative_poly

    p = MultilinearPoly.from_json(_read_json(args.input))
    if p.n < 2:
        raise InputError("classification needs n >= 2")
    form = classify_marmat(p)
    assoc = is_associative_poly(p)
    payload = dict(form.to_json(), associative=assoc)
    if bool(form) != assoc:
        print(f"internal error: form {form.kind.value} but associative={assoc}", file=sys.stderr)
        return EXIT_NEGATIVE
    params = ", ".join(f"{k}={v}" for k, v in form.to_json().items() if k != "form")
    _emit(cfg, payload, f"{form.kind.value}" + (f" ({params})" if params else "")
          + ("; associative" if assoc else "; not associative"))
    return EXIT_OK if assoc else EXIT_NEGATIVE


def cmd_derive(args, cfg: CliConfig) -> int:
    f = FiniteOp.from_json(_read_json(args.input))
    print(json.dumps(derive(f, args.ell).to_json()))
    return EXIT_OK


def cmd_enumerate(args, cfg: CliConfig) -> int:
    from .enumeration import enumerate_assoc_multilinear, enumerate_assoc_ops

    if (args.k is None) == (args.prime is None):
        raise InputError("give exactly one of --k or --prime")
    if args.k is not None:
        ops, report = enumerate_assoc_ops(args.k, args.n, cfg.threads)
        payload = dict(report.to_json(), tables=[list(f.table) for f in ops])
    else:
        polys, report = enumerate_assoc_multilinear(args.prime, args.n, cfg.threads)
        payload = dict(report.to_json(), polys=[p.to_json()["coeffs"] for p in polys])
    human = f"scanned {report.scanned}, associative {report.associative}\n" + "\n".join(
        f"  {name}: {count}" for name, count in report.histogram.items())
    _emit(cfg, payload, human)
    return EXIT_OK if report.verdict in (None, True) else EXIT_NEGATIVE


def cmd_verify(args, cfg: CliConfig) -> int:
    from . import enumeration as en

    suite = args.suite
    if suite == "two-element":
        report = en.verify_two_element_theorem(args.n or 3, cfg.threads)
    elif suite == "marmat":
        if args.prime is None:
            raise InputError("marmat needs --prime")
        report = en.verify_marmat(args.prime, args.n or 2, cfg.threads)
    elif suite == "primitive":
        report = en.verify_proposition(args.max_n or 10)
    else:
        report = en.verify_semigroup_count(args.k or 3, args.n or 2, cfg.threads)
    human = f"{suite}: {'pass' if report.passed else 'fail'} " \
            f"(scanned {report.scanned}, associative {report.associative})"
    if "primitive_sumbar_arities" in report.details:
        human += f"\nprimitive sumbar arities: {report.details['primitive_sumbar_arities']}"
    _emit(cfg, report.to_json(), human)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_fixtures(args, cfg: CliConfig) -> int:
    from . import enumeration as en
    from .algebra import is_prime

    if args.kind == "band":
        if len(args.params) != 2:
            raise InputError("band needs ROWS COLS")
        try:
            rows, cols = (int(x) for x in args.params)
        except ValueError as exc:
            raise InputError("band sizes must be integers") from exc
        f = en.rectangular_band(rows, cols)
        outside = None
    else:
        if len(args.params) != 1:
            raise InputError("phi needs one JSON list, e.g. [0,1,0]")
        try:
            phi = json.loads(args.params[0])
        except json.JSONDecodeError as exc:
            raise InputError(f"bad phi {args.params[0]!r}") from exc
        if not isinstance(phi, list) or not all(isinstance(v, int) for v in phi):
            raise InputError("phi must be a list of integers")
        f = en.idempotent_map_op(phi, args.n)
        outside = None
        if is_prime(f.k) and f.n >= 2:
            outside = f.table not in set(en.multilinear_tables(f.k, f.n))
    ok = is_associative(f)
    payload = dict(f.to_json(), associative=ok)
    human = json.dumps(f.to_json()) + "\n" + ("associative" if ok else "not associative")
    if outside is not None:
        payload["outside_multilinear"] = outside
        if outside:
            human += "\noutside multilinear classification"
    _emit(cfg, payload, human)
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--max-cells", type=int, default=argparse.SUPPRESS,
                        help="guard rail on scanned cells/tuples (default 2^24)")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads for scans, 0 = auto")

    parser = argparse.ArgumentParser(prog="nsemigroup", parents=[common],
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="test associativity of a table")
    p.add_argument("input", help="operation JSON file, or - for stdin")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common], help="classify a Boolean operation")
    p.add_argument("input")
    p.add_argument("--probes", action="store_true", help="also run the probe decision tree")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("classify-poly", parents=[common], help="classify a multilinear polynomial")
    p.add_argument("input")
    p.set_defaults(func=cmd_classify_poly)

    p = sub.add_parser("derive", parents=[common], help="emit the derived operation f_ell")
    p.add_argument("input")
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("enumerate", parents=[common], help="list all associative ops")
    p.add_argument("--k", type=int)
    p.add_argument("--prime", type=int)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="run a theorem-verification suite")
    p.add_argument("suite", choices=["two-element", "marmat", "primitive", "semigroup-count"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--prime", type=int)
    p.add_argument("--max-n", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fixtures", parents=[common], help="associative ops outside the forms")
    p.add_argument("kind", choices=["band", "phi"])
    p.add_argument("params", nargs="+")
    p.add_argument("--n", type=int, default=2)
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = CliConfig(
        max_cells=getattr(args, "max_cells", finops.DEFAULT_MAX_CELLS),
        json=getattr(args, "json", False),
        threads=getattr(args, "threads", 0),
    )
    previous = finops.get_max_cells()
    try:
        finops.set_max_cells(cfg.max_cells)
        if cfg.threads < 0:
            raise InputError("--threads must be >= 0")
        return args.func(args, cfg)
    except InfeasibleSize as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        finops.set_max_cells(previous)


if __name__ == "__main__":
    sys.exit(main())
