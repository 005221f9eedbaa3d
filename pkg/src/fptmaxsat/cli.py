"""``fptmaxsat``: decide or maximize satisfied clauses of a DIMACS CNF file."""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import List, Optional

from .analysis import audit_trace
from .dimacs import ParseError, parse_dimacs_header
from .formula import Instance, satisfied_count
from .solver import Solver, VerificationError, maximize

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_PARSE, EXIT_INTERNAL = 10, 20, 1, 2, 3
ORACLE_MAX_VARS = 20


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fptmaxsat", description=__doc__)
    p.add_argument("input", help="DIMACS CNF file, or - for stdin")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--k", type=int, help="decide whether k clauses can be satisfied")
    mode.add_argument("--max", action="store_true", help="find the maximum number of satisfiable clauses")
    p.add_argument("--trace", metavar="PATH", help="write one line per reduction/branching event")
    p.add_argument("--audit", action="store_true", help="print the branching audit as comment lines")
    p.add_argument("--stats", metavar="PATH", help="write search statistics as JSON")
    p.add_argument("--oracle-check", action="store_true",
                   help="cross-check against brute force (at most %d variables)" % ORACLE_MAX_VARS)
    p.add_argument("--no-verify", action="store_true", help="skip certificate verification")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _vline(sigma, nvars: int) -> str:
    lits = [v if sigma.get(v, 0) else -v for v in range(1, nvars + 1)]
    return "v " + " ".join(map(str, lits + [0]))


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        text = _read(args.input)
    except OSError as e:
        print("c cannot read input: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            f, declared = parse_dimacs_header(text)
    except ParseError as e:
        print("c parse error: %s" % e, file=sys.stderr)
        return EXIT_PARSE
    for w in caught:
        print("c warning: %s" % w.message, file=sys.stderr)
    nvars = max([declared] + list(f.variables()))
    if args.oracle_check and nvars > ORACLE_MAX_VARS:
        print("c --oracle-check supports at most %d variables" % ORACLE_MAX_VARS, file=sys.stderr)
        return EXIT_USAGE

    trace_fh = open(args.trace, "w") if args.trace else None
    tracer = (lambda line: trace_fh.write(line + "\n")) if trace_fh else None
    solver = Solver(tracer=tracer, audit=args.audit or bool(args.stats), verify=not args.no_verify)
    try:
        if args.max:
            best, sigma = maximize(f, lambda: solver)
            yes, k = True, best
        else:
            k = args.k
            outcome = solver.solve(Instance(f, k))
            yes, sigma = outcome.yes, outcome.certificate
    except VerificationError as e:
        print("c internal error: %s" % e, file=sys.stderr)
        return EXIT_INTERNAL
    finally:
        if trace_fh:
            trace_fh.close()

    if yes and not args.no_verify and satisfied_count(f, sigma) < k:
        print("c certificate check failed", file=sys.stderr)
        return EXIT_INTERNAL
    if args.oracle_check:
        from .oracle import brute_maxsat

        opt, _ = brute_maxsat(f)
        if (args.max and opt != k) or (not args.max and (opt >= k) != yes):
            print("c oracle disagrees: brute-force optimum %d" % opt, file=sys.stderr)
            return EXIT_INTERNAL
        print("c oracle agrees (optimum %d)" % opt, file=out)

    report = audit_trace(solver.records) if solver.audit else None
    if args.audit:
        for line in report.to_text().splitlines():
            print("c " + line, file=out)
    if args.stats:
        data = solver.stats.as_dict()
        data["audit_violations"] = report.violations
        data["b2_attributed"] = report.b2_attributed
        with open(args.stats, "w") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)

    print("s YES" if yes else "s NO", file=out)
    if yes:
        print(_vline(sigma, nvars), file=out)
    if args.max:
        print("o %d" % k, file=out)
    return EXIT_YES if yes else EXIT_NO


def main() -> None:
    sys.exit(run())
