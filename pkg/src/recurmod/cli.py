"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 hypothesis violation,
3 disagreement between a rule and brute force (or a failed self-check).
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import report
from .classify import classify, explain
from .completeness import (
    DEFAULT_CEILING,
    completeness_report,
    subsequence_classes,
)
from .core import Recurrence, find_period
from .errors import Disagreement, FactorizationLimit, HypothesisViolation, OutOfScope, TrivialSeed
from .fundamental import enumerate_fs, verify_three_power_decomposition
from .order import order_composite, order_direct
from .variant_u import check_order_divisibility, complete_verdict, uniform_verdict

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_DISAGREEMENT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=int, default=0, help="first seed term (default 0)")
    p.add_argument("--b", type=int, default=1, help="second seed term (default 1)")
    p.add_argument("--q", type=int, required=True, help="multiplier; write --q=-3 for negatives")
    p.add_argument("--variant", choices=["w", "u"], default="w",
                   help="w: w_n = q w_{n-1} + w_{n-2};  u: u_n = q u_{n-1} - u_{n-2}")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--ceiling", type=int, default=DEFAULT_CEILING,
                   help="largest modulus re-checked by brute force")
    p.add_argument("--workers", type=int, default=1, help="processes for exhaustive sweeps")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="recurmod", description="Second-order linear recurrences modulo m.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("period", help="one full period mod m")
    _common(p)
    p.add_argument("--mod", type=int, required=True)

    p = sub.add_parser("order", help="order of the companion matrix mod m")
    _common(p)
    p.add_argument("--mod", type=int, required=True)

    p = sub.add_parser("complete", help="residue completeness report")
    _common(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--mod", type=int, nargs="+")
    g.add_argument("--upto", type=int, help="every modulus from 2 to N")

    p = sub.add_parser("classify", help="all complete moduli up to a bound")
    _common(p)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--explain", type=int, nargs="*", default=[], metavar="M")
    p.add_argument("--full-evidence", action="store_true", help="include evidence for incomplete moduli")

    p = sub.add_parser("fs", help="fundamental system of periods")
    _common(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--mod", type=int)
    g.add_argument("--three-power", type=int, metavar="N", help="check the decomposition of FS(3^N)")

    p = sub.add_parser("subseq", help="stride-4 slices of (0, 1, q) mod p")
    _common(p)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("variant-u", help="completeness and uniform distribution rules for u")
    _common(p)
    p.add_argument("--mod", type=int, nargs="*", default=[])
    p.add_argument("--order-divisibility", type=int, metavar="P",
                   help="check the period mod an odd prime P divides P-1 or P+1")

    p = sub.add_parser("verify", help="run every property check")
    p.add_argument("--quick", action="store_true", help="smaller grids")
    return parser


def _spec(args, sign=None) -> Recurrence:
    return Recurrence(args.a, args.b, args.q, sign if sign is not None else (1 if args.variant == "w" else -1))


def _emit(args, command: str, payload, text: str, rows=None) -> None:
    if args.format == "json":
        sys.stdout.write(report.to_json(command, payload))
    elif args.format == "csv":
        sys.stdout.write(report.rows_to_csv(rows if rows is not None else [payload]))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_period(args) -> int:
    rec = _spec(args)
    per = find_period(rec, args.mod)
    payload = {"spec": _spec_dict(rec), "modulus": per.modulus, "length": per.length,
               "residues": list(per.residues)}
    text = f"length {per.length}\n" + ",".join(map(str, per.residues))
    row = {"modulus": per.modulus, "length": per.length, "residues": " ".join(map(str, per.residues))}
    _emit(args, "period", payload, text, [row])
    return EXIT_OK


def cmd_order(args) -> int:
    sign = _spec(args).sign
    direct = order_direct(args.q, sign, args.mod)
    comp = order_composite(args.q, sign, args.mod)
    agree = direct.order == comp.order
    payload = {"q": args.q, "sign": sign, "modulus": args.mod, "order": direct.order,
               "composite": comp.as_dict(), "agree": agree}
    _emit(args, "order", payload, str(direct.order),
          [{"q": args.q, "sign": sign, "modulus": args.mod, "order": direct.order,
            "compositeOrder": comp.order, "agree": int(agree)}])
    if not agree:
        print(f"direct order {direct.order} != composite order {comp.order}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    return EXIT_OK


def cmd_complete(args) -> int:
    rec = _spec(args)
    mods = args.mod if args.mod else range(2, args.upto + 1)
    reports = []
    for m in mods:
        if m < 1:
            raise UsageError(f"modulus must be positive, got {m}")
        if rec.is_trivial_mod(m):
            print(f"mod {m}: seed is (0, 0), skipped", file=sys.stderr)
            continue
        reports.append(completeness_report(rec, m))
    if args.format == "csv":
        sys.stdout.write(report.reports_to_csv(reports, variant=args.variant))
        return EXIT_OK
    payload = {"spec": _spec_dict(rec), "variant": args.variant, "reports": [r.as_dict() for r in reports]}
    lines = [f"{'m':>6}  {'complete':<8}  {'period':>7}  {'uniform':<7}  missing"]
    for r in reports:
        miss = " ".join(map(str, r.missing[:12])) + (" ..." if len(r.missing) > 12 else "")
        lines.append(f"{r.modulus:>6}  {str(r.complete):<8}  {r.period_length:>7}  {str(r.uniform):<7}  {miss}")
    _emit(args, "complete", payload, "\n".join(lines))
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.variant != "w":
        raise UsageError("classify handles the w variant; use variant-u for u")
    rec = _spec(args)
    result = classify(rec, args.bound, workers=args.workers)
    explained = {m: explain(result, m, args.ceiling) for m in args.explain}
    payload = result.as_dict(full_evidence=args.full_evidence)
    if explained:
        payload["explain"] = {str(m): [s.as_dict() for s in steps] for m, steps in explained.items()}
    lines = [f"recurrence {rec}, moduli 2..{args.bound}",
             f"members ({len(result.members)}): " + " ".join(map(str, result.members)),
             "candidate primes: " + " ".join(map(str, result.candidates)),
             "families:"]
    for f in result.structure:
        lines.append(f"  {str(f):<28} {f.conditions}")
    lines += [f"note: {n}" for n in result.notes]
    for m, steps in explained.items():
        lines.append(f"explain {m}:")
        lines += [f"  {s}" for s in steps]
    rows = [e.as_dict() | {"from": e.parent or "", "detail": e.detail}
            for e in result.evidence if e.complete or args.full_evidence]
    _emit(args, "classify", payload, "\n".join(lines), rows)
    return EXIT_OK


def cmd_fs(args) -> int:
    if args.variant != "w":
        raise UsageError("fundamental systems are computed for the w variant")
    if args.three_power is not None:
        dec = verify_three_power_decomposition(args.q, args.three_power)
        payload = dict(dec.__dict__, holds=dec.holds)
        text = "\n".join(f"{k}: {v}" for k, v in payload.items())
        _emit(args, "fs", payload, text)
        return EXIT_OK if dec.holds else EXIT_DISAGREEMENT
    fs = enumerate_fs(args.q, args.mod)
    payload = {"modulus": fs.modulus, "q": fs.q, "totalTerms": fs.total_terms,
               "periods": [list(p.residues) for p in fs.periods]}
    rows = [{"index": i, "length": p.length, "residues": " ".join(map(str, p.residues))}
            for i, p in enumerate(fs.periods)]
    _emit(args, "fs", payload, fs.dump(), rows)
    return EXIT_OK


def cmd_subseq(args) -> int:
    res = subsequence_classes(args.q, args.p)
    d = res.as_dict()
    text = "\n".join([f"p={res.prime} q={res.q} L4 mod p = {res.l4}",
                      f"four slices complete: {res.all_complete}",
                      f"F_(4n) = -2nq mod p: {res.arithmetic_progression}",
                      f"holds: {res.holds}"])
    row = {k: v for k, v in d.items() if k != "classes"}
    _emit(args, "subseq", d, text, [row])
    return EXIT_OK


def cmd_variant_u(args) -> int:
    rec = _spec(args, sign=-1)
    if not args.mod and args.order_divisibility is None:
        raise UsageError("give --mod and/or --order-divisibility")
    verdicts = []
    for m in args.mod:
        if m < 2:
            raise UsageError(f"modulus must be at least 2, got {m}")
        verdicts += [complete_verdict(rec, m, args.ceiling), uniform_verdict(rec, m, args.ceiling)]
    payload = {"spec": _spec_dict(rec), "verdicts": [v.as_dict() for v in verdicts]}
    lines = [f"{'m':>6}  {'property':<9} {'rule':<6} {'brute':<6} agrees" if verdicts else ""]
    for v in verdicts:
        lines.append(f"{v.modulus:>6}  {v.property:<9} {str(v.rule):<6} {str(v.bruteforce):<6} {v.agrees}")
    status = EXIT_OK
    if args.order_divisibility is not None:
        od = check_order_divisibility(args.q, args.order_divisibility, args.a, args.b)
        payload["orderDivisibility"] = dict(od.__dict__, holds=od.holds)
        lines.append(f"p={od.prime} ({od.kind}): period {od.period_length}, "
                     f"claim divides {od.divides}, holds {od.holds}")
        if not od.holds:
            status = EXIT_DISAGREEMENT
    _emit(args, "variant-u", payload, "\n".join(x for x in lines if x), [v.as_dict() for v in verdicts])
    for v in verdicts:
        if v.agrees is False:
            print(f"mod {v.modulus}: {v.property} rule says {v.rule}, brute force says {v.bruteforce}",
                  file=sys.stderr)
            status = EXIT_DISAGREEMENT
    return status


def cmd_verify(args) -> int:
    from .verify import run_all

    rows = run_all(quick=args.quick, stream=sys.stdout)
    failed = [r for r in rows if not r[2]]
    print(f"{len(rows) - len(failed)}/{len(rows)} checks passed")
    return EXIT_DISAGREEMENT if failed else EXIT_OK


def _spec_dict(rec: Recurrence) -> dict:
    return {"a": rec.a, "b": rec.b, "q": rec.q, "sign": rec.sign}


COMMANDS = {
    "period": cmd_period,
    "order": cmd_order,
    "complete": cmd_complete,
    "classify": cmd_classify,
    "fs": cmd_fs,
    "subseq": cmd_subseq,
    "variant-u": cmd_variant_u,
    "verify": cmd_verify,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"recurmod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code or 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except HypothesisViolation as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except Disagreement as exc:
        print(f"disagreement: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except (UsageError, TrivialSeed, FactorizationLimit, OutOfScope, ValueError) as exc:
        print(f"recurmod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
