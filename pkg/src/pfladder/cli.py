"""Command-line front end: ``pfladder {invariants,oracle,table,render,selftest}``.

Exit codes: 0 success, 1 computation error, 2 usage error, 3 verification
mismatch.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys

from . import invariants, ladder, oracle
from .errors import BadParams, PfladderError, UnknownFamily

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3
PARAMS = ("t", "j", "k", "n")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_range(text: str) -> list[int]:
    """``"3"`` -> [3]; ``"1..4"`` -> [1, 2, 3, 4] (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or lo..hi, got {text!r}") from None


def _selector(p, ranges=False):
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--family", help="named family: I, L^n, M, SM, N, SN, Lt2, Lk, Ljk, Hjk")
    group.add_argument("--spec", help="ladder spec JSON file")
    kind = parse_range if ranges else int
    for name in PARAMS:
        p.add_argument(f"--{name}", type=kind, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pfladder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", help="height, multiplicity, h-vector, regularity")
    _selector(p)
    p.add_argument("--policy", choices=sorted(invariants.POLICIES), default="max_t")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("oracle", help="Gröbner-basis verification")
    osub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    v = osub.add_parser("verify", help="compare the oracle with the engine")
    _selector(v)
    v.add_argument("--max-generators", type=int, default=oracle.DEFAULT_MAX_GENERATORS)
    v.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    v.add_argument("--basis", metavar="PATH", help="write the reduced Gröbner basis here ('-' for stdout)")

    p = sub.add_parser("table", help="multiplicities over parameter ranges")
    p.add_argument("--family", required=True)
    for name in PARAMS:
        p.add_argument(f"--{name}", type=parse_range, default=None)
    p.add_argument("--format", choices=("csv", "json", "text"), default="text")

    p = sub.add_parser("render", help="ASCII picture of a ladder")
    _selector(p)

    sub.add_parser("selftest", help="run the cross-identity checks")
    return parser


def _family_params(args) -> dict:
    return {k: getattr(args, k) for k in PARAMS if getattr(args, k) is not None}


def _resolve(args):
    """(spec, family or None, params)."""
    if args.spec:
        try:
            return ladder.load_spec(args.spec), None, {}
        except OSError as exc:
            raise UsageError(f"--spec: cannot read {args.spec}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"--spec: invalid JSON in {args.spec}: {exc.msg}") from None
    params = _family_params(args)
    try:
        return ladder.make_family(args.family, **params), args.family, params
    except UnknownFamily as exc:
        raise UsageError(f"--family: {exc}") from None
    except BadParams as exc:
        raise UsageError(f"--family {args.family}: {exc}") from None


def _report_text(rep: invariants.InvariantReport) -> str:
    lines = [
        f"spec: {rep.spec}",
        f"height: {rep.height}",
        f"multiplicity: {rep.multiplicity}",
        f"h-vector: {list(rep.hvector) if rep.hvector is not None else '-'}",
        f"regularity: {rep.regularity if rep.regularity is not None else '-'}",
        f"source: {rep.source}",
    ]
    return "\n".join(lines)


def cmd_invariants(args, out) -> int:
    spec, family, params = _resolve(args)
    if family is not None:
        rep = invariants.report(family=family, policy=args.policy, **params)
    else:
        rep = invariants.report(spec, policy=args.policy)
    print(rep.to_json() if args.format == "json" else _report_text(rep), file=out)
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    spec, family, params = _resolve(args)
    rep = oracle.verify(spec, family, params or None, cap=args.max_generators,
                        budget=args.budget, keep_basis=bool(args.basis))
    print(rep.to_json(), file=out)
    if args.basis == "-":
        print(rep.basis_text(), file=out)
    elif args.basis:
        with open(args.basis, "w") as fh:
            fh.write(rep.basis_text() + "\n")
    return EXIT_OK if rep.passed else EXIT_MISMATCH


def _table_rows(family, ranges):
    names = [k for k in PARAMS if k in ranges]
    rows = []
    for combo in itertools.product(*(ranges[k] for k in names)):
        params = dict(zip(names, combo))
        try:
            ladder.make_family(family, **params)
        except UnknownFamily as exc:
            raise UsageError(f"--family: {exc}") from None
        except BadParams as exc:
            raise UsageError(f"--family {family} with {params}: {exc}") from None
        rows.append((combo, invariants.mult_formula(family, **params)))
    return names, rows


def cmd_table(args, out) -> int:
    ranges = {k: getattr(args, k) for k in PARAMS if getattr(args, k) is not None}
    names, rows = _table_rows(args.family, ranges)
    if args.format == "json":
        data = [dict(zip(names, combo), multiplicity=str(e)) for combo, e in rows]
        print(json.dumps({"family": args.family, "rows": data}), file=out)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(names + ["multiplicity"])
        for combo, e in rows:
            w.writerow(list(combo) + [e])
        out.write(buf.getvalue())
    else:
        header = names + ["multiplicity"]
        cells = [[str(x) for x in combo] + [str(e)] for combo, e in rows]
        widths = [max(len(r[i]) for r in cells + [header]) for i in range(len(header))]
        for r in [header] + cells:
            print("  ".join(c.rjust(w) for c, w in zip(r, widths)), file=out)
    return EXIT_OK


def cmd_render(args, out) -> int:
    spec, _, _ = _resolve(args)
    print(ladder.render_ascii(spec), file=out)
    return EXIT_OK


def selftest_checks():
    """Yield ``(name, passed)`` for a quick battery of cross-identities."""
    yield "product formula vs M_t, SM_t (t <= 20)", all(
        invariants.mult_Mt(t) == invariants.mult_krattenthaler(t, 2 * t + 1)
        and invariants.mult_SMt(t) == invariants.mult_krattenthaler(t, 2 * t + 2)
        for t in range(1, 21)
    )
    cases = [("M", {"t": t}) for t in range(1, 5)]
    cases += [("SM", {"t": t}) for t in range(1, 4)]
    cases += [("N", {"t": t}) for t in range(2, 5)]
    cases += [("Lk", {"t": t, "k": k}) for t in range(1, 4) for k in range(1, 4)]
    cases += [("Hjk", {"t": 2, "j": 1, "k": 1}), ("Ljk", {"t": 2, "j": 1, "k": 2})]
    yield "engine vs formulas", all(
        invariants.mult_generic(ladder.make_family(f, **p)) == invariants.mult_formula(f, **p)
        for f, p in cases
    )
    yield "h-vector sums", all(
        sum(invariants.hvec_generic(ladder.make_family(f, **p))) == invariants.mult_formula(f, **p)
        for f, p in cases
    )
    yield "M_t h-vectors of decreasing type (t <= 30)", all(
        invariants.is_decreasing_type(invariants.hvec_Mt(t)) for t in range(1, 31)
    )
    for f, p in (("M", {"t": 2}), ("N", {"t": 2}), ("SM", {"t": 2})):
        label = ", ".join(f"{k}={v}" for k, v in p.items())
        yield f"oracle {f} ({label})", oracle.verify_family(f, **p).passed


def cmd_selftest(args, out) -> int:
    ok = True
    for name, passed in selftest_checks():
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {name}", file=out)
    return EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = {
    "invariants": cmd_invariants,
    "oracle": cmd_oracle,
    "table": cmd_table,
    "render": cmd_render,
    "selftest": cmd_selftest,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"pfladder: usage error: {exc}", file=err)
        return EXIT_USAGE
    except PfladderError as exc:
        print(f"pfladder: {type(exc).__name__}: {exc}", file=err)
        return EXIT_COMPUTE
    except ArithmeticError as exc:
        print(f"pfladder: {type(exc).__name__}: {exc}", file=err)
        return EXIT_COMPUTE


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
